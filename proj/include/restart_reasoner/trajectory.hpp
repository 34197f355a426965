#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "restart_reasoner/level.hpp"

namespace rr {

struct TrajectoryParams {
  double gravity = 9.81;
  /// Launch speed; 0 selects the level-dependent default where the maximum
  /// range on flat ground is `range_factor` times the level width.
  double speed = 0.0;
  double range_factor = 1.5;
  double step = 0.02;     // horizontal sampling increment
  double eps_hit = 0.1;   // max distance between impact and aimed point

  double launch_speed(const Level& level) const;
  std::vector<std::string> violations() const;

  friend bool operator==(const TrajectoryParams&, const TrajectoryParams&) = default;
};

enum class TargetPoint { top_center, left_center };
enum class Arc { low, high };

std::string_view to_string(TargetPoint p);
std::string_view to_string(Arc a);

struct Shot {
  double angle = 0.0;  // radians above horizontal, in (0, pi/2)
  double speed = 0.0;
  int target_block = 0;
  TargetPoint target_point = TargetPoint::top_center;
  Arc arc = Arc::low;

  friend bool operator==(const Shot&, const Shot&) = default;
};

struct Impact {
  int block_id = 0;
  Point point;
};

/// Launch angles (radians) through `target` from `origin`, low arc first.
/// Empty when out of range, a single angle at the range limit. Throws
/// std::invalid_argument when the target is not strictly right of origin or
/// speed/gravity are not positive.
std::vector<double> launch_angles(Point target, double speed, double gravity, Point origin);

/// Height of the flight path at horizontal position x.
double trajectory_height(Point origin, double angle, double speed, double gravity, double x);

/// Samples the path at x = origin.x + i * step and returns the first
/// non-ground block containing a sample. Ties go to the lower id. Returns
/// nullopt when the path leaves the level (right edge or below y = 0) or
/// lands on ground first.
std::optional<Impact> trace(const Shot& shot, const Level& level, const TrajectoryParams& params);

Point aim_point(const Block& block, TargetPoint point);

/// Shots per block that land within eps_hit of the block's top-centre or
/// left-centre. Blocks with no such shot are absent. Shots are listed by
/// target point (top-centre first) then arc (low first).
std::map<int, std::vector<Shot>> reachable_blocks(const Level& level, const TrajectoryParams& params);

}  // namespace rr
