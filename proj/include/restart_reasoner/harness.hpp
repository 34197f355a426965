#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "restart_reasoner/config.hpp"
#include "restart_reasoner/level.hpp"
#include "restart_reasoner/oracle.hpp"

namespace rr {

enum class Prediction { solvable, unsolvable };
enum class Outcome { TP, TN, FP, FN };

std::string_view to_string(Prediction p);
std::string_view to_string(Outcome o);

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShotLog {
  int attempt = 0;
  int block = 0;
  TargetPoint point = TargetPoint::top_center;
  Arc arc = Arc::low;

  friend bool operator==(const ShotLog&, const ShotLog&) = default;
};

/// One play-through of a level by one group, restarts included.
struct PlayResult {
  bool degenerate = false;  // nothing reachable from the start
  bool solved = false;      // cleared within the restart cap
  double time = 0.0;        // synthetic seconds until solved or abandoned
  double final_score = 0.0; // score of the last attempt
  int restarts = 0;
  int restart_signals = 0;
  int hard_rule_triggers = 0;  // last-bird verdicts of "unsolvable"
  int hard_rule_restarts = 0;  // ... that led to a restart
  std::optional<Prediction> first_prediction;  // first attempt, at its last bird
  std::optional<bool> first_attempt_solved;    // unset when a restart cut it short
  std::optional<std::size_t> first_signal;     // shots fired before the first signal
  std::vector<ShotLog> shots;
};

/// Plays `level` with `policy` (seeded per attempt from `seed`). With
/// `use_restarts` the restart heuristic is consulted before every shot after
/// the first; without it the agent only restarts after running out of birds.
PlayResult play(std::shared_ptr<const Level> level, PolicyKind policy, bool use_restarts,
                const GlobalConfig& config, std::uint64_t seed);

/// A paired trial: control (no restarts) and test (restarts) groups with the
/// same seed stream. Prediction and `solved` describe the control group's
/// first attempt; times come from each group's full play-through.
struct TrialRecord {
  std::string level_id;
  std::uint64_t seed = 0;
  bool degenerate = false;
  std::optional<Prediction> prediction;
  bool solved = false;
  double final_score = 0.0;       // control group
  double score_with = 0.0;        // test group
  double time_without = 0.0;
  double time_with = 0.0;
  bool solved_without = false;    // within the restart cap
  bool solved_with = false;
  int restarts = 0;               // test group
  int restart_signals = 0;
  int hard_rule_triggers = 0;
  int hard_rule_restarts = 0;
  std::optional<std::size_t> first_signal;
  std::vector<ShotLog> shots_without;
  std::vector<ShotLog> shots_with;

  std::size_t shots_taken() const { return shots_without.size(); }
};

TrialRecord run_trial(const std::string& level_id, std::shared_ptr<const Level> level, PolicyKind policy,
                      const GlobalConfig& config, std::uint64_t seed);

/// Throws ClassificationError when the record carries no prediction.
Outcome classify(const TrialRecord& record);

/// mean(without) / mean(with); nullopt (N/A) when no restart was signalled,
/// either side is empty, or the denominator is zero.
std::optional<double> time_ratio(std::span<const double> without, std::span<const double> with,
                                 bool restart_signalled = true);
std::optional<double> time_ratio(std::span<const TrialRecord> records);

struct LevelRow {
  std::string level;
  double tp = 0.0;
  double tn = 0.0;
  double fp = 0.0;
  double fn = 0.0;
  std::optional<double> tr;
  int n = 0;
};

/// Rates over the non-degenerate records of one level.
LevelRow summarize(const std::string& level, std::span<const TrialRecord> records);

/// Mean of each rate column; TR over rows that have one; n summed.
/// Throws std::invalid_argument on an empty input.
LevelRow aggregate(std::span<const LevelRow> rows);

struct ScoreRow {
  std::string level;
  double score_without_mean = 0.0;
  double score_without_sd = 0.0;
  double score_with_mean = 0.0;
  double score_with_sd = 0.0;
  double time_without_mean = 0.0;
  double time_with_mean = 0.0;
  int n = 0;
};

struct NamedLevel {
  std::string id;
  std::shared_ptr<const Level> level;
};

struct EvaluationReport {
  std::vector<LevelRow> rows;  // corpus order, degenerate levels omitted
  LevelRow average;
  std::vector<ScoreRow> scores;
  std::vector<std::string> degenerate_levels;
  std::vector<TrialRecord> records;  // level-major, trial-minor
  int trials_per_level = 0;
};

/// Runs config.harness.trials paired trials per level on `jobs` threads.
/// The report does not depend on `jobs`.
EvaluationReport evaluate(const std::vector<NamedLevel>& corpus, PolicyKind policy,
                          const GlobalConfig& config, int jobs = 1);

/// Seed of trial `trial` on level `index` under base seed `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t index, int trial);

}  // namespace rr
