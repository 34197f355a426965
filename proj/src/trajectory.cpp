#include "restart_reasoner/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rr {

std::string_view to_string(TargetPoint p) {
  return p == TargetPoint::top_center ? "top-center" : "left-center";
}

std::string_view to_string(Arc a) { return a == Arc::low ? "low" : "high"; }

double TrajectoryParams::launch_speed(const Level& level) const {
  if (speed > 0.0) return speed;
  return std::sqrt(range_factor * level.width * gravity);
}

std::vector<std::string> TrajectoryParams::violations() const {
  std::vector<std::string> out;
  if (!(gravity > 0.0)) out.push_back("gravity must be > 0");
  if (!(speed >= 0.0)) out.push_back("speed must be >= 0");
  if (!(range_factor > 0.0)) out.push_back("range_factor must be > 0");
  if (!(step > 0.0)) out.push_back("step must be > 0");
  if (!(eps_hit > 0.0)) out.push_back("eps_hit must be > 0");
  return out;
}

std::vector<double> launch_angles(Point target, double speed, double gravity, Point origin) {
  if (!(speed > 0.0) || !(gravity > 0.0))
    throw std::invalid_argument("launch_angles: speed and gravity must be positive");
  const double x = target.x - origin.x;
  const double y = target.y - origin.y;
  if (!(x > 0.0)) throw std::invalid_argument("launch_angles: target must lie right of the origin");

  // y = x tan(t) - g x^2 (1 + tan^2 t) / (2 v^2), a quadratic in tan(t).
  const double v2 = speed * speed;
  const double disc = v2 * v2 - gravity * (gravity * x * x + 2.0 * y * v2);
  const double scale = v2 * v2;
  if (disc < -1e-12 * scale) return {};
  if (disc <= 1e-12 * scale) return {std::atan(v2 / (gravity * x))};
  const double root = std::sqrt(disc);
  return {std::atan((v2 - root) / (gravity * x)), std::atan((v2 + root) / (gravity * x))};
}

double trajectory_height(Point origin, double angle, double speed, double gravity, double x) {
  const double dx = x - origin.x;
  const double vx = speed * std::cos(angle);
  return origin.y + dx * std::tan(angle) - gravity * dx * dx / (2.0 * vx * vx);
}

std::optional<Impact> trace(const Shot& shot, const Level& level, const TrajectoryParams& params) {
  if (!(params.step > 0.0)) throw std::invalid_argument("trace: step must be positive");
  const Point origin = level.sling;
  const double step = params.step;
  auto sample_x = [&](long i) { return origin.x + static_cast<double>(i) * step; };
  // Same arithmetic as trajectory_height with the trigonometry hoisted.
  const double tan_a = std::tan(shot.angle);
  const double vx = shot.speed * std::cos(shot.angle);
  const double denom = 2.0 * vx * vx;
  auto sample_y = [&](long i) {
    const double dx = sample_x(i) - origin.x;
    return origin.y + dx * tan_a - params.gravity * dx * dx / denom;
  };

  // First sample that leaves the level: past the right edge or below y = 0.
  // The path is concave, so "inside" holds on a prefix of the samples and a
  // binary search finds the same index a linear walk would.
  auto inside = [&](long i) { return sample_x(i) <= level.width && sample_y(i) >= 0.0; };
  long exit = 0;
  if (inside(0)) {
    long lo = 0;  // inside
    long hi = std::max(1L, static_cast<long>(std::ceil((level.width - origin.x) / step)) + 1);
    while (inside(hi)) hi *= 2;
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (inside(mid) ? lo : hi) = mid;
    }
    exit = hi;
  }

  // A block only sees the samples inside its x-extent; scan those index
  // ranges instead of testing every block at every sample. Ties on the same
  // sample prefer non-ground, then the lower id.
  struct Key {
    long index;
    int ground;
    int id;
    auto operator<=>(const Key&) const = default;
  };
  std::optional<Key> best;
  // Ground spans the level, so scan it last where the best hit so far
  // bounds its range.
  std::vector<const Block*> order;
  order.reserve(level.blocks.size());
  for (const Block& b : level.blocks)
    if (!b.is_ground()) order.push_back(&b);
  for (const Block& b : level.blocks)
    if (b.is_ground()) order.push_back(&b);
  for (const Block* bp : order) {
    const Block& b = *bp;
    const long first = std::max(0L, static_cast<long>(std::ceil((b.left() - origin.x) / step - 1e-9)));
    const long last = std::min(exit - 1, static_cast<long>(std::floor((b.right() - origin.x) / step + 1e-9)));
    for (long i = first; i <= last; ++i) {
      if (best && i > best->index) break;
      if (!b.contains({sample_x(i), sample_y(i)})) continue;
      const Key key{i, b.is_ground() ? 1 : 0, b.id};
      if (!best || key < *best) best = key;
      break;
    }
  }
  if (!best || best->ground) return std::nullopt;
  return Impact{best->id, {sample_x(best->index), sample_y(best->index)}};
}

Point aim_point(const Block& block, TargetPoint point) {
  return point == TargetPoint::top_center ? block.top_center() : block.left_center();
}

std::map<int, std::vector<Shot>> reachable_blocks(const Level& level, const TrajectoryParams& params) {
  std::map<int, std::vector<Shot>> out;
  const double speed = params.launch_speed(level);
  for (const Block& b : level.blocks) {
    if (b.is_ground()) continue;
    std::vector<Shot> shots;
    for (TargetPoint tp : {TargetPoint::top_center, TargetPoint::left_center}) {
      const Point aim = aim_point(b, tp);
      if (!(aim.x > level.sling.x)) continue;
      const auto angles = launch_angles(aim, speed, params.gravity, level.sling);
      for (std::size_t a = 0; a < angles.size(); ++a) {
        const double theta = angles[a];
        if (!(theta > 0.0 && theta < std::numbers::pi / 2)) continue;
        Shot shot{theta, speed, b.id, tp, a == 0 ? Arc::low : Arc::high};
        const auto hit = trace(shot, level, params);
        if (!hit || hit->block_id != b.id) continue;
        if (std::hypot(hit->point.x - aim.x, hit->point.y - aim.y) > params.eps_hit) continue;
        shots.push_back(shot);
      }
    }
    if (!shots.empty()) out.emplace(b.id, std::move(shots));
  }
  return out;
}

}  // namespace rr
