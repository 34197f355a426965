#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "restart_reasoner/level.hpp"
#include "restart_reasoner/propagation.hpp"
#include "restart_reasoner/trajectory.hpp"

namespace rr {

/// What one shot did to the level.
struct ShotOutcome {
  double score_delta = 0.0;      // points gained, >= 0
  double change_fraction = 0.0;  // destroyed or displaced blocks / initial block count
  Material hit_material = Material::ground;
  BirdKind bird = BirdKind::red;
  std::size_t birds_remaining_after = 0;

  friend bool operator==(const ShotOutcome&, const ShotOutcome&) = default;
};

struct RestartConfig {
  std::map<BirdKind, double> thresholds;  // per-bird score threshold T
  std::array<double, 4> weights{0.2, 0.2, 0.2, 0.4};  // change, type, score, unsolvable
  double restart_threshold = 0.5;
  std::map<BirdKind, std::set<Material>> effectiveness;  // materials each bird is good against
  double delta_move = 0.1;  // displacement that counts a block as moved

  static RestartConfig defaults();

  double threshold_for(BirdKind bird) const;
  bool effective(BirdKind bird, Material material) const;

  std::vector<std::string> violations() const;
  /// Non-fatal issues, e.g. weights that do not sum to 1.
  std::vector<std::string> warnings() const;

  friend bool operator==(const RestartConfig&, const RestartConfig&) = default;
};

struct SolvabilityWitness {
  Shot shot;
  ForceMap forces;
};

struct SolvabilityVerdict {
  bool solvable = false;
  std::optional<SolvabilityWitness> witness;
  /// Pigs the strongest examined shot leaves alive; empty iff solvable.
  std::vector<int> pigs_unkillable;
};

/// Is there one reachable impact whose propagated force destroys every pig?
/// Scans reachable blocks by id, then target point, then arc, and returns the
/// first witness. Throws LevelError when no pig is alive or no bird remains.
SolvabilityVerdict solvable_one_shot(const Level& level, const PropagationConstants& constants,
                                     const TrajectoryParams& trajectory);
SolvabilityVerdict solvable_one_shot(const LevelState& state, const PropagationConstants& constants,
                                     const TrajectoryParams& trajectory);

/// max(T - dS, 0) / T: 1 when the shot scored nothing, 0 once T is reached.
double score_h(double score_delta, double threshold);

struct GoodUse {
  double change_term = 0.0;  // 1 - change_fraction
  double type_term = 0.0;    // 1 when the hit material is not one the bird is good against
};

GoodUse good_use_components(const ShotOutcome& outcome, const RestartConfig& config);

struct RestartTerms {
  double change = 0.0;
  double type = 0.0;
  double score = 0.0;
  double unsolvable = 0.0;

  friend bool operator==(const RestartTerms&, const RestartTerms&) = default;
};

double restart_score(const RestartTerms& terms, const std::array<double, 4>& weights);

struct RestartDecision {
  bool restart = false;
  double score = 0.0;
  RestartTerms terms;
  /// Present only when exactly one bird remained and solvability was evaluated.
  std::optional<bool> predicted_solvable;
  bool hard_rule = false;  // last bird and predicted unsolvable
};

/// Combines the post-shot terms of `last` with an optional last-bird
/// solvability prediction. The hard rule forces a restart when the last bird
/// faces an unsolvable level.
RestartDecision decide_restart(const std::optional<ShotOutcome>& last,
                               std::optional<bool> predicted_solvable, const RestartConfig& config);

/// Evaluates solvability only when exactly one bird is left.
RestartDecision should_restart(const LevelState& state, const std::optional<ShotOutcome>& last,
                               const RestartConfig& config, const PropagationConstants& constants,
                               const TrajectoryParams& trajectory);

}  // namespace rr
