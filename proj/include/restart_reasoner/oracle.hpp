#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "restart_reasoner/heuristics.hpp"
#include "restart_reasoner/level.hpp"
#include "restart_reasoner/propagation.hpp"
#include "restart_reasoner/trajectory.hpp"

namespace rr {

struct Scoring {
  double pig = 10000.0;
  double block = 500.0;
  double unused_bird = 10000.0;

  friend bool operator==(const Scoring&, const Scoring&) = default;
};

/// Ground-truth physics: the same rule family as the heuristic with
/// attenuated loss factors.
struct OracleConstants {
  PropagationConstants physics;
  Scoring scoring;
  double t_shot = 10.0;    // synthetic seconds per shot
  double t_restart = 5.0;  // synthetic seconds per restart

  /// Oracle defaults derived from the heuristic constants: c = c1 = 0.8,
  /// c_l = 0.9, everything else shared.
  static OracleConstants attenuated(const PropagationConstants& heuristic);

  std::vector<std::string> violations() const;
  /// Problems that would let the oracle kill something the heuristic cannot.
  std::vector<std::string> dominance_violations(const PropagationConstants& heuristic) const;

  friend bool operator==(const OracleConstants&, const OracleConstants&) = default;
};

struct ShotResult {
  LevelState state;
  ShotOutcome outcome;
  std::optional<Impact> impact;
  std::vector<int> destroyed;
};

/// Fires the next bird: trace to the first impact, propagate with the oracle
/// physics, remove destroyed blocks, let unsupported blocks drop, and score.
/// The input state is untouched. Throws LevelError when no bird remains.
ShotResult apply_shot(const LevelState& state, const Shot& shot, const OracleConstants& oracle,
                      const TrajectoryParams& trajectory, double delta_move = 0.1);

/// Drops every non-ground block onto the highest face-supporting top below
/// it, processing bottom-up. Ground stays put. Result is sorted by id.
std::vector<Block> settle(std::vector<Block> blocks, double k);

/// Exhaustive: does any admissible shot in `state` kill every pig?
bool oracle_solvable(const LevelState& state, const OracleConstants& oracle,
                     const TrajectoryParams& trajectory);

/// First shot in scan order that kills every pig, if any.
std::optional<Shot> find_clearing_shot(const LevelState& state, const OracleConstants& oracle,
                                       const TrajectoryParams& trajectory);

enum class PolicyKind { naive_random_pig, greedy_max_damage };

std::string_view to_string(PolicyKind k);
std::optional<PolicyKind> parse_policy(std::string_view s);

struct AgentPolicy {
  PolicyKind kind = PolicyKind::naive_random_pig;
  std::uint64_t seed = 0;
};

class NothingReachable : public std::runtime_error {
 public:
  NothingReachable() : std::runtime_error("no block is reachable from the sling") {}
};

/// Deterministic in (policy, state). Naive picks uniformly among shots aimed
/// at pigs (any reachable shot when no pig is reachable); greedy maximises
/// the oracle score gain, ties to the lowest block id. Throws NothingReachable.
Shot next_shot(const AgentPolicy& policy, const LevelState& state, const OracleConstants& oracle,
               const TrajectoryParams& trajectory);

/// Shots in scan order: block id, then target point, then arc.
std::vector<Shot> admissible_shots(const Level& level, const TrajectoryParams& trajectory);

}  // namespace rr
