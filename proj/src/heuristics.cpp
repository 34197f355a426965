#include "restart_reasoner/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rr {

RestartConfig RestartConfig::defaults() {
  RestartConfig cfg;
  cfg.thresholds = {{BirdKind::red, 5000.0},
                    {BirdKind::blue, 6000.0},
                    {BirdKind::yellow, 7000.0},
                    {BirdKind::black, 10000.0},
                    {BirdKind::white, 5000.0}};
  const std::set<Material> all_blocks{Material::wood, Material::ice, Material::stone};
  cfg.effectiveness = {{BirdKind::red, all_blocks},
                       {BirdKind::white, all_blocks},
                       {BirdKind::yellow, {Material::wood}},
                       {BirdKind::blue, {Material::ice}},
                       {BirdKind::black, {Material::stone}}};
  return cfg;
}

double RestartConfig::threshold_for(BirdKind bird) const {
  auto it = thresholds.find(bird);
  if (it == thresholds.end())
    throw std::invalid_argument("no score threshold for bird " + std::string(to_string(bird)));
  return it->second;
}

bool RestartConfig::effective(BirdKind bird, Material material) const {
  auto it = effectiveness.find(bird);
  return it != effectiveness.end() && it->second.count(material) > 0;
}

std::vector<std::string> RestartConfig::violations() const {
  std::vector<std::string> out;
  for (BirdKind b : kAllBirds) {
    auto it = thresholds.find(b);
    if (it == thresholds.end())
      out.push_back("missing threshold for " + std::string(to_string(b)));
    else if (!(it->second > 0.0))
      out.push_back("threshold for " + std::string(to_string(b)) + " must be > 0");
  }
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (!(weights[i] >= 0.0 && weights[i] <= 1.0))
      out.push_back("weight w" + std::to_string(i + 1) + " must be in [0,1]");
  if (!(restart_threshold >= 0.0 && restart_threshold <= 1.0))
    out.push_back("restart_threshold must be in [0,1]");
  if (!(delta_move >= 0.0)) out.push_back("delta_move must be >= 0");
  return out;
}

std::vector<std::string> RestartConfig::warnings() const {
  std::vector<std::string> out;
  const double sum = weights[0] + weights[1] + weights[2] + weights[3];
  if (std::abs(sum - 1.0) > 1e-9) out.push_back("restart weights sum to " + format_number(sum) + ", not 1");
  return out;
}

SolvabilityVerdict solvable_one_shot(const Level& level, const PropagationConstants& constants,
                                     const TrajectoryParams& trajectory) {
  if (level.birds.empty()) throw LevelError("solvability needs at least one bird");
  const std::vector<int> pigs = level.pig_ids();
  if (pigs.empty()) throw LevelError("no pigs alive: the level is already solved");

  const PropagationModel model(level, constants);
  const auto reachable = reachable_blocks(level, trajectory);

  SolvabilityVerdict verdict;
  std::optional<std::vector<int>> fewest_survivors;
  for (const auto& [id, shots] : reachable) {
    // Every shot at a block impacts that block, so one propagation covers them.
    ForceMap forces = model.propagate(id, 1.0);
    std::vector<int> survivors;
    for (int pig : pigs)
      if (!forces.is_destroyed(pig)) survivors.push_back(pig);
    if (survivors.empty()) {
      verdict.solvable = true;
      verdict.witness = SolvabilityWitness{shots.front(), std::move(forces)};
      verdict.pigs_unkillable.clear();
      return verdict;
    }
    if (!fewest_survivors || survivors.size() < fewest_survivors->size())
      fewest_survivors = std::move(survivors);
  }
  verdict.pigs_unkillable = fewest_survivors ? *fewest_survivors : pigs;
  return verdict;
}

SolvabilityVerdict solvable_one_shot(const LevelState& state, const PropagationConstants& constants,
                                     const TrajectoryParams& trajectory) {
  return solvable_one_shot(state.current(), constants, trajectory);
}

double score_h(double score_delta, double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("score_h: threshold must be positive");
  return std::max(threshold - score_delta, 0.0) / threshold;
}

GoodUse good_use_components(const ShotOutcome& outcome, const RestartConfig& config) {
  GoodUse g;
  g.change_term = 1.0 - std::clamp(outcome.change_fraction, 0.0, 1.0);
  g.type_term = config.effective(outcome.bird, outcome.hit_material) ? 0.0 : 1.0;
  return g;
}

double restart_score(const RestartTerms& terms, const std::array<double, 4>& weights) {
  return weights[0] * terms.change + weights[1] * terms.type + weights[2] * terms.score +
         weights[3] * terms.unsolvable;
}

RestartDecision decide_restart(const std::optional<ShotOutcome>& last,
                               std::optional<bool> predicted_solvable, const RestartConfig& config) {
  RestartDecision d;
  if (last) {
    const GoodUse g = good_use_components(*last, config);
    d.terms.change = g.change_term;
    d.terms.type = g.type_term;
    d.terms.score = score_h(last->score_delta, config.threshold_for(last->bird));
  }
  d.predicted_solvable = predicted_solvable;
  if (predicted_solvable) d.terms.unsolvable = *predicted_solvable ? 0.0 : 1.0;
  d.score = restart_score(d.terms, config.weights);
  d.hard_rule = predicted_solvable.has_value() && !*predicted_solvable;
  d.restart = d.hard_rule || d.score > config.restart_threshold;
  return d;
}

RestartDecision should_restart(const LevelState& state, const std::optional<ShotOutcome>& last,
                               const RestartConfig& config, const PropagationConstants& constants,
                               const TrajectoryParams& trajectory) {
  std::optional<bool> predicted;
  if (state.birds_remaining() == 1)
    predicted = solvable_one_shot(state, constants, trajectory).solvable;
  return decide_restart(last, predicted, config);
}

}  // namespace rr
