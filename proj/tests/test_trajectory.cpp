#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "restart_reasoner/trajectory.hpp"
#include "support.hpp"

using namespace rr;
using rr::test::blk;

namespace {

constexpr double g = 9.81;

// Independent root finder: bisection on the height error over an angle bracket.
double bisect_angle(Point target, double v, double lo, double hi) {
  auto err = [&](double t) { return trajectory_height({0, 0}, t, v, g, target.x) - target.y; };
  double flo = err(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = err(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool has_shot(const std::vector<Shot>& shots, TargetPoint p, Arc a) {
  return std::any_of(shots.begin(), shots.end(),
                     [&](const Shot& s) { return s.target_point == p && s.arc == a; });
}

}  // namespace

TEST(LaunchAngles, MaximumRange) {
  const double v = 12.0;
  const auto angles = launch_angles({v * v / g, 0.0}, v, g, {0, 0});
  ASSERT_EQ(angles.size(), 1u);
  EXPECT_NEAR(angles[0], std::numbers::pi / 4, 1e-9);
}

TEST(LaunchAngles, SymmetricAboutQuarterPi) {
  const double v = std::sqrt(10 * g);
  const auto angles = launch_angles({1.0, 0.0}, v, g, {0, 0});
  ASSERT_EQ(angles.size(), 2u);
  EXPECT_LT(angles[0], angles[1]);
  EXPECT_NEAR(angles[0] + angles[1], std::numbers::pi / 2, 1e-12);
  // y = 0 gives sin(2t) = g x / v^2 = 0.1.
  EXPECT_NEAR(angles[0], bisect_angle({1.0, 0.0}, v, 1e-6, std::numbers::pi / 4), 1e-9);
  EXPECT_NEAR(angles[1], bisect_angle({1.0, 0.0}, v, std::numbers::pi / 4, std::numbers::pi / 2 - 1e-6), 1e-9);
  EXPECT_NEAR(std::sin(2 * angles[0]), 0.1, 1e-12);
}

TEST(LaunchAngles, OutOfRange) {
  const double v = 5.0;
  EXPECT_TRUE(launch_angles({100 * v * v / g, 0.0}, v, g, {0, 0}).empty());
}

TEST(LaunchAngles, RejectsBadInput) {
  EXPECT_THROW(launch_angles({-1, 0}, 5, g, {0, 0}), std::invalid_argument);
  EXPECT_THROW(launch_angles({0, 3}, 5, g, {0, 0}), std::invalid_argument);
  EXPECT_THROW(launch_angles({1, 0}, 0, g, {0, 0}), std::invalid_argument);
}

TEST(LaunchAngles, RandomTargetsLieOnTheCurve) {
  std::mt19937_64 rng(7);
  const double v = 20.0;
  const Point origin{4, 3};
  std::uniform_real_distribution<double> ux(0.5, 60.0);
  std::uniform_real_distribution<double> uy(-3.0, 15.0);
  int checked = 0;
  while (checked < 1000) {
    const Point t{origin.x + ux(rng), origin.y + uy(rng)};
    const auto angles = launch_angles(t, v, g, origin);
    if (angles.size() != 2) continue;
    for (double a : angles) EXPECT_NEAR(trajectory_height(origin, a, v, g, t.x), t.y, 1e-6);
    ++checked;
  }
}

TEST(Trace, SingleBlockInLowArc) {
  const Level level = test::exposed_pig();
  const TrajectoryParams params;
  const Point aim = level.at(1).left_center();
  const auto angles = launch_angles(aim, params.launch_speed(level), g, level.sling);
  ASSERT_EQ(angles.size(), 2u);
  const auto hit = trace({angles[0], params.launch_speed(level), 1, TargetPoint::left_center, Arc::low},
                         level, params);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->block_id, 1);
  EXPECT_LE(std::hypot(hit->point.x - aim.x, hit->point.y - aim.y), params.eps_hit);
}

TEST(Trace, WallInFront) {
  const Level level = test::world({blk(1, Material::pig, 20, 1), blk(2, Material::stone, 17, 1, 0.5, 3)});
  const TrajectoryParams params;
  const double v = params.launch_speed(level);
  const auto angles = launch_angles(level.at(1).left_center(), v, g, level.sling);
  const auto hit = trace({angles[0], v, 1, TargetPoint::left_center, Arc::low}, level, params);
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->block_id, 2);
}

TEST(Trace, EmptyLevel) {
  const Level level = test::world({});
  const TrajectoryParams params;
  const double v = params.launch_speed(level);
  for (double a : {0.1, 0.5, 0.785, 1.2, 1.5})
    EXPECT_FALSE(trace({a, v, 0, TargetPoint::top_center, Arc::low}, level, params)) << a;
}

TEST(Trace, MatchesLinearWalk) {
  // Reference: walk every sample from the sling until the path leaves the level.
  const Level level = test::world({blk(1, Material::wood, 14, 1, 1, 3), blk(2, Material::pig, 22, 1),
                                   blk(3, Material::stone, 30, 1, 2, 6), blk(4, Material::ice, 25, 6, 3, 0.5)});
  const TrajectoryParams params;
  const double v = params.launch_speed(level);
  for (double a = 0.02; a < 1.55; a += 0.013) {
    std::optional<int> expected;
    for (long i = 0;; ++i) {
      const double x = level.sling.x + i * params.step;
      const double y = trajectory_height(level.sling, a, v, g, x);
      if (x > level.width || y < 0) break;
      const Block* first = nullptr;
      for (const Block& b : level.blocks)
        if (b.contains({x, y}) && (!first || (first->is_ground() && !b.is_ground()))) first = &b;
      if (first) {
        if (!first->is_ground()) expected = first->id;
        break;
      }
    }
    const auto hit = trace({a, v, 0, TargetPoint::top_center, Arc::low}, level, params);
    EXPECT_EQ(hit ? std::optional<int>(hit->block_id) : std::nullopt, expected) << a;
  }
}

TEST(Reachable, LoneBlock) {
  const auto r = reachable_blocks(test::exposed_pig(), {});
  ASSERT_EQ(r.count(1), 1u);
  EXPECT_TRUE(has_shot(r.at(1), TargetPoint::left_center, Arc::low));
  EXPECT_TRUE(has_shot(r.at(1), TargetPoint::top_center, Arc::high));
}

TEST(Reachable, SealedVault) {
  const auto r = reachable_blocks(test::vault(), {});
  EXPECT_EQ(r.count(2), 0u);
  EXPECT_FALSE(r.empty());
}

TEST(Reachable, UnderShelfOnlyFromAbove) {
  const Level level = load_level_file(test::fixture_path("shelf.json"));
  const auto r = reachable_blocks(level, {});
  ASSERT_EQ(r.count(3), 1u);
  for (const Shot& s : r.at(3)) EXPECT_EQ(s.target_point, TargetPoint::top_center);
}

TEST(Reachable, ShotsHitTheirAimPoint) {
  const TrajectoryParams params;
  for (const char* name : {"exposed.json", "vault.json", "shelf.json", "L17.json", "marginal.json"}) {
    const Level level = load_level_file(test::fixture_path(name));
    for (const auto& [id, shots] : reachable_blocks(level, params)) {
      const Block& b = level.at(id);
      for (const Shot& s : shots) {
        const Point aim = aim_point(b, s.target_point);
        EXPECT_NEAR(trajectory_height(level.sling, s.angle, s.speed, params.gravity, aim.x), aim.y, 1e-6);
        const auto hit = trace(s, level, params);
        ASSERT_TRUE(hit);
        EXPECT_EQ(hit->block_id, id);
        EXPECT_NEAR(trajectory_height(level.sling, s.angle, s.speed, params.gravity, hit->point.x),
                    hit->point.y, 1e-6);
        EXPECT_LE(std::hypot(hit->point.x - aim.x, hit->point.y - aim.y), params.eps_hit);
      }
    }
    EXPECT_EQ(reachable_blocks(level, params), reachable_blocks(level, params)) << name;
  }
}

TEST(TrajectoryParams, DefaultSpeedGivesOneAndAHalfWidths) {
  const Level level = test::world({});
  const TrajectoryParams params;
  const double v = params.launch_speed(level);
  EXPECT_NEAR(v * v / g, 1.5 * 48, 1e-9);
  TrajectoryParams fixed;
  fixed.speed = 7.0;
  EXPECT_EQ(fixed.launch_speed(level), 7.0);
}
