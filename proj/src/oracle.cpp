#include "restart_reasoner/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "restart_reasoner/random.hpp"

namespace rr {

OracleConstants OracleConstants::attenuated(const PropagationConstants& heuristic) {
  OracleConstants o;
  o.physics = heuristic;
  o.physics.c = std::min(heuristic.c, 0.8);
  o.physics.c1 = std::min(heuristic.c1, 0.8);
  o.physics.c_l = std::min(heuristic.c_l, 0.9);
  return o;
}

std::vector<std::string> OracleConstants::violations() const {
  std::vector<std::string> out = physics.violations();
  if (!(physics.c < 1.0)) out.push_back("oracle c must be < 1");
  if (!(physics.c1 < 1.0)) out.push_back("oracle c1 must be < 1");
  if (!(physics.c_l < 1.0)) out.push_back("oracle c_l must be < 1");
  if (!(scoring.pig >= 0.0 && scoring.block >= 0.0 && scoring.unused_bird >= 0.0))
    out.push_back("scoring points must be >= 0");
  if (!(t_shot >= 0.0 && t_restart >= 0.0)) out.push_back("synthetic times must be >= 0");
  return out;
}

std::vector<std::string> OracleConstants::dominance_violations(const PropagationConstants& h) const {
  std::vector<std::string> out;
  if (physics.c > h.c) out.push_back("oracle c exceeds heuristic c");
  if (physics.c1 > h.c1) out.push_back("oracle c1 exceeds heuristic c1");
  if (physics.c_l > h.c_l) out.push_back("oracle c_l exceeds heuristic c_l");
  if (physics.f_floor < h.f_floor) out.push_back("oracle f_floor is below heuristic f_floor");
  for (Material m : {Material::wood, Material::ice, Material::stone, Material::pig})
    if (physics.kill[m] < h.kill[m])
      out.push_back("oracle kill." + std::string(to_string(m)) + " is below the heuristic's");
  if (physics.k != h.k || physics.s1 != h.s1 || physics.d_max != h.d_max || physics.h_max != h.h_max ||
      physics.thrown_law != h.thrown_law)
    out.push_back("oracle and heuristic must share geometry constants (k, s1, d_max, h_max, thrown law)");
  return out;
}

std::vector<Block> settle(std::vector<Block> blocks, double k) {
  std::vector<Block> placed;
  std::vector<Block> movable;
  for (const Block& b : blocks) (b.is_ground() ? placed : movable).push_back(b);
  std::sort(movable.begin(), movable.end(), [](const Block& a, const Block& b) {
    return a.bottom() != b.bottom() ? a.bottom() < b.bottom() : a.id < b.id;
  });
  for (Block b : movable) {
    double rest = 0.0;
    for (const Block& p : placed) {
      const double overlap = std::min(p.right(), b.right()) - std::max(p.left(), b.left());
      if (overlap > k && p.top() <= b.bottom() + k) rest = std::max(rest, p.top());
    }
    if (rest < b.bottom() - 1e-9) b.y = round_micro(rest);
    placed.push_back(b);
  }
  std::sort(placed.begin(), placed.end(), [](const Block& a, const Block& b) { return a.id < b.id; });
  return placed;
}

namespace {

ShotResult apply_with_model(const LevelState& state, const Shot& shot, const OracleConstants& oracle,
                            const TrajectoryParams& trajectory, double delta_move,
                            const PropagationModel& model) {
  const auto bird = state.next_bird();
  if (!bird) throw LevelError("no birds remaining");

  ShotResult result{state, {}, std::nullopt, {}};
  LevelState& next = result.state;
  next.consume_bird();

  const Level& before = state.current();
  result.impact = trace(shot, before, trajectory);
  result.outcome.bird = *bird;
  result.outcome.hit_material = Material::ground;

  double points = 0.0;
  std::vector<Block> survivors;
  if (result.impact) {
    result.outcome.hit_material = before.at(result.impact->block_id).material;
    const ForceMap forces = model.propagate(result.impact->block_id, 1.0);
    result.destroyed = forces.destroyed;
    for (const Block& b : before.blocks) {
      if (!b.is_ground() && forces.is_destroyed(b.id)) {
        points += b.is_pig() ? oracle.scoring.pig : oracle.scoring.block;
        continue;
      }
      survivors.push_back(b);
    }
  } else {
    survivors = before.blocks;
  }

  std::vector<Block> settled = settle(std::move(survivors), oracle.physics.k);
  std::size_t moved = 0;
  for (const Block& b : settled) {
    const Block& old = before.at(b.id);
    if (std::hypot(b.x - old.x, b.y - old.y) > delta_move) ++moved;
  }
  next.set_blocks(std::move(settled));

  if (next.solved()) points += oracle.scoring.unused_bird * static_cast<double>(next.birds_remaining());

  const std::size_t initial_blocks = state.initial().non_ground_count();
  const std::size_t changed = result.destroyed.size() + moved;
  result.outcome.score_delta = points;
  result.outcome.change_fraction =
      initial_blocks == 0 ? 0.0 : std::min(1.0, static_cast<double>(changed) / initial_blocks);
  result.outcome.birds_remaining_after = next.birds_remaining();
  next.add_score(points);
  next.add_time(oracle.t_shot);
  return result;
}

}  // namespace

ShotResult apply_shot(const LevelState& state, const Shot& shot, const OracleConstants& oracle,
                      const TrajectoryParams& trajectory, double delta_move) {
  if (state.birds_remaining() == 0) throw LevelError("no birds remaining");
  const PropagationModel model(state.current(), oracle.physics);
  return apply_with_model(state, shot, oracle, trajectory, delta_move, model);
}

std::vector<Shot> admissible_shots(const Level& level, const TrajectoryParams& trajectory) {
  std::vector<Shot> out;
  for (auto& [id, shots] : reachable_blocks(level, trajectory))
    out.insert(out.end(), shots.begin(), shots.end());
  return out;
}

std::optional<Shot> find_clearing_shot(const LevelState& state, const OracleConstants& oracle,
                                       const TrajectoryParams& trajectory) {
  if (state.birds_remaining() == 0 || state.solved()) return std::nullopt;
  const PropagationModel model(state.current(), oracle.physics);
  for (const Shot& shot : admissible_shots(state.current(), trajectory)) {
    if (apply_with_model(state, shot, oracle, trajectory, 0.1, model).state.solved()) return shot;
  }
  return std::nullopt;
}

bool oracle_solvable(const LevelState& state, const OracleConstants& oracle,
                     const TrajectoryParams& trajectory) {
  if (state.birds_remaining() == 0) throw LevelError("oracle_solvable needs at least one bird");
  return find_clearing_shot(state, oracle, trajectory).has_value();
}

std::string_view to_string(PolicyKind k) {
  return k == PolicyKind::naive_random_pig ? "naive" : "greedy";
}

std::optional<PolicyKind> parse_policy(std::string_view s) {
  if (s == "naive" || s == "naive-random-pig") return PolicyKind::naive_random_pig;
  if (s == "greedy" || s == "greedy-max-damage") return PolicyKind::greedy_max_damage;
  return std::nullopt;
}

Shot next_shot(const AgentPolicy& policy, const LevelState& state, const OracleConstants& oracle,
               const TrajectoryParams& trajectory) {
  const Level& level = state.current();
  const std::vector<Shot> shots = admissible_shots(level, trajectory);
  if (shots.empty()) throw NothingReachable();

  if (policy.kind == PolicyKind::greedy_max_damage) {
    const PropagationModel model(level, oracle.physics);
    const Shot* best = nullptr;
    double best_gain = -1.0;
    for (const Shot& s : shots) {
      const double gain = apply_with_model(state, s, oracle, trajectory, 0.1, model).outcome.score_delta;
      if (gain > best_gain) {  // strict: earlier (lower id) shots win ties
        best_gain = gain;
        best = &s;
      }
    }
    return *best;
  }

  std::vector<const Shot*> pig_shots;
  for (const Shot& s : shots)
    if (level.at(s.target_block).is_pig()) pig_shots.push_back(&s);
  std::mt19937_64 rng(mix_seed(policy.seed, state.birds_used()));
  if (!pig_shots.empty()) return *pig_shots[pick_index(rng, pig_shots.size())];
  return shots[pick_index(rng, shots.size())];
}

}  // namespace rr
