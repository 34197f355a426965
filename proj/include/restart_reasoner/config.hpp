#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "restart_reasoner/heuristics.hpp"
#include "restart_reasoner/oracle.hpp"
#include "restart_reasoner/propagation.hpp"
#include "restart_reasoner/trajectory.hpp"

namespace rr {

/// Which solvability verdict feeds the restart decision and the prediction.
enum class PredictorKind { heuristic, oracle };

std::string_view to_string(PredictorKind k);
std::optional<PredictorKind> parse_predictor(std::string_view s);

struct HarnessParams {
  int trials = 100;        // seeded trials per level
  int restart_cap = 10;    // restarts before a trial is abandoned as unsolved
  std::uint64_t seed = 1;  // base seed for every trial stream
  /// On the last bird, agents take a level-clearing shot when one exists.
  bool finish_aware = true;
  PredictorKind predictor = PredictorKind::heuristic;

  std::vector<std::string> violations() const;

  friend bool operator==(const HarnessParams&, const HarnessParams&) = default;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every tunable in one place. Sections: propagation, trajectory, restart,
/// oracle, harness. The oracle section only carries loss factors, floor,
/// kill thresholds, scoring and timings; geometry is shared with propagation.
struct GlobalConfig {
  PropagationConstants propagation;
  TrajectoryParams trajectory;
  RestartConfig restart = RestartConfig::defaults();
  OracleConstants oracle = OracleConstants::attenuated(PropagationConstants{});
  HarnessParams harness;

  static GlobalConfig defaults() { return {}; }

  /// Defaults overlaid with `text` (JSON), then with `overrides`
  /// ("section.key=value", value parsed as JSON when possible). Unknown keys
  /// and out-of-range values throw ConfigError.
  static GlobalConfig parse(const std::string& text, const std::vector<std::string>& overrides = {});
  static GlobalConfig load(const std::optional<std::string>& path,
                           const std::vector<std::string>& overrides = {});

  std::string to_json() const;
  std::vector<std::string> violations() const;
  std::vector<std::string> warnings() const;
};

/// Path from RESTART_REASONER_CONFIG, if set and non-empty.
std::optional<std::string> config_path_from_env();

}  // namespace rr
