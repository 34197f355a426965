#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "restart_reasoner/generator.hpp"
#include "restart_reasoner/geometry.hpp"
#include "restart_reasoner/oracle.hpp"
#include "support.hpp"

using namespace rr;
using rr::test::blk;

namespace {

constexpr double k = kDefaultContactTolerance;

// Reference edge test: grow both rectangles by k/2 on every side and check
// for a shared point.
bool dilated_touch(const Block& a, const Block& b, double tol) {
  const double h = tol / 2;
  return overlaps_1d(a.left() - h, a.right() + h, b.left() - h, b.right() + h) &&
         overlaps_1d(a.bottom() - h, a.top() + h, b.bottom() - h, b.top() + h);
}

Level random_scatter(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> pos(0.0, 6.0);
  std::uniform_real_distribution<double> size(0.2, 2.0);
  std::vector<Block> blocks;
  for (int i = 1; i <= n; ++i)
    blocks.push_back(blk(i, Material::wood, round_micro(pos(rng)), round_micro(pos(rng)),
                         round_micro(size(rng)), round_micro(size(rng))));
  return test::floating(std::move(blocks));
}

}  // namespace

TEST(Overlaps1d, Examples) {
  EXPECT_TRUE(overlaps_1d(0, 2, 1, 3));
  EXPECT_TRUE(overlaps_1d(0, 1, 1, 2));
  EXPECT_FALSE(overlaps_1d(0, 1, 1.5, 2));
}

TEST(FallArc, UnitSquare) {
  const Region r = fall_arc(blk(1, Material::wood, 0, 0));
  EXPECT_EQ(r.pivot, (Point{1, 0}));
  EXPECT_DOUBLE_EQ(r.radius, 1.0);
  EXPECT_EQ(r.direction, FallDirection::rightward);
}

TEST(FallArc, TallBlock) {
  const Region r = fall_arc(blk(1, Material::wood, 5, 0, 1, 3));
  EXPECT_EQ(r.pivot, (Point{6, 0}));
  EXPECT_DOUBLE_EQ(r.radius, 3.0);
  const Region left = fall_arc(blk(1, Material::wood, 5, 0, 1, 3), FallDirection::leftward);
  EXPECT_EQ(left.pivot, (Point{5, 0}));
}

TEST(FallArc, ReachesBlockTwoUnitsRight) {
  const Block column = blk(1, Material::wood, 0, 0, 1, 3);
  const Block target = blk(2, Material::pig, 3, 0);
  // The target's bottom-left corner (3,0) is 2 from the pivot (1,0) < 3.
  const double d = std::hypot(target.left() - column.right(), target.bottom() - column.bottom());
  ASSERT_LT(d, column.height);
  EXPECT_TRUE(fall_arc(column).intersects(target));
  EXPECT_FALSE(fall_arc(column).intersects(blk(3, Material::pig, 4.5, 0)));
  // Rightward arcs never reach leftward.
  EXPECT_FALSE(fall_arc(column).intersects(blk(4, Material::pig, -2, 0)));
}

TEST(FallArc, GroundThrows) {
  EXPECT_THROW(fall_arc(Block{0, Material::ground, 0, 0, 48, 1}), LevelError);
}

TEST(FallArc, MonteCarloArea) {
  std::mt19937_64 rng(11);
  for (double h : {0.5, 1.0, 3.0}) {
    const Region r = fall_arc(blk(1, Material::wood, 2, 1, 1, h));
    std::uniform_real_distribution<double> ux(r.pivot.x - h, r.pivot.x + h);
    std::uniform_real_distribution<double> uy(r.pivot.y - h, r.pivot.y + h);
    const int n = 200000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += r.contains({ux(rng), uy(rng)}) ? 1 : 0;
    const double estimate = 4.0 * h * h * hits / n;
    const double exact = std::numbers::pi * h * h / 4.0;
    EXPECT_NEAR(estimate, exact, 0.02 * exact) << "h=" << h;
    EXPECT_DOUBLE_EQ(r.area(), exact);
  }
}

TEST(Supp, BlockOnGroundIsEmpty) {
  const Level level = test::world({blk(1, Material::wood, 20, 1)});
  EXPECT_TRUE(supp(level.at(1), level).empty());
}

TEST(Supp, ColumnOfThree) {
  const Level level = test::world({blk(1, Material::wood, 20, 1), blk(2, Material::ice, 20, 2),
                                   blk(3, Material::stone, 20, 3), blk(4, Material::pig, 20, 4)});
  EXPECT_EQ(supp(level.at(4), level), (std::vector<int>{1, 2, 3}));
}

TEST(Supp, TShape) {
  // Two columns of two blocks, a beam across them, a pig on the beam.
  const Level level = test::world({blk(1, Material::wood, 20, 1), blk(2, Material::wood, 20, 2),
                                   blk(3, Material::wood, 23, 1), blk(4, Material::wood, 23, 2),
                                   blk(5, Material::wood, 20, 3, 4, 0.5),
                                   blk(6, Material::pig, 21.5, 3.5)});
  EXPECT_EQ(supp(level.at(5), level), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(supp(level.at(6), level), (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(supp(level.at(2), level), (std::vector<int>{1}));
}

TEST(Supp, FloatingPairIsOneWay) {
  const Level level = test::floating({blk(1, Material::wood, 0, 0), blk(2, Material::wood, 0, 1)});
  EXPECT_EQ(supp(level.at(2), level), std::vector<int>{1});
  EXPECT_TRUE(supp(level.at(1), level).empty());
}

TEST(Supp, AntisymmetricOnGeneratedStacks) {
  GeneratorParams params;
  params.count = 30;
  for (const GeneratedLevel& g : generate_corpus(params, 3, OracleConstants::attenuated({}), {})) {
    const ContactGraph graph(g.level, k);
    for (const Block& a : g.level.blocks) {
      if (a.is_ground()) continue;
      for (int b : supp(a, g.level, graph)) {
        const auto back = supp(g.level.at(b), g.level, graph);
        EXPECT_EQ(std::count(back.begin(), back.end(), a.id), 0) << g.id << " " << a.id << "/" << b;
      }
    }
  }
}

TEST(ContactGraph, AbuttingSquares) {
  const Level level = test::floating({blk(1, Material::wood, 0, 0), blk(2, Material::wood, 1, 0)});
  const ContactGraph g(level, k);
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.edge(1, 2)->placement, Placement::right_of);
  EXPECT_EQ(g.edge(2, 1)->placement, Placement::left_of);
  EXPECT_TRUE(g.edge(1, 2)->face);
}

TEST(ContactGraph, SeparatedByTwoK) {
  const Level level = test::floating({blk(1, Material::wood, 0, 0), blk(2, Material::wood, 1 + 2 * k, 0)});
  EXPECT_EQ(contact_graph(level).edge_count(), 0u);
}

TEST(ContactGraph, StackOfThree) {
  const Level level = test::floating({blk(1, Material::wood, 0, 0), blk(2, Material::wood, 0, 1),
                                      blk(3, Material::wood, 0, 2)});
  const ContactGraph g(level, k);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edge(3, 2)->placement, Placement::below);
  EXPECT_EQ(g.edge(2, 1)->placement, Placement::below);
  EXPECT_EQ(g.edge(1, 2)->placement, Placement::above);
  EXPECT_FALSE(g.edge(1, 3));
}

TEST(ContactGraph, CornerTouchIsNotFace) {
  const Level level = test::floating({blk(1, Material::wood, 0, 0), blk(2, Material::wood, 1, 1)});
  const auto e = contact_graph(level).edge(1, 2);
  ASSERT_TRUE(e);
  EXPECT_FALSE(e->face);
}

TEST(ContactGraph, MatchesDilationAndIsSymmetric) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Level level = random_scatter(rng, 12);
    const ContactGraph g(level, k);
    for (const Block& a : level.blocks)
      for (const Block& b : level.blocks) {
        if (a.id == b.id) continue;
        const auto ab = g.edge(a.id, b.id);
        EXPECT_EQ(ab.has_value(), dilated_touch(a, b, k));
        if (ab) EXPECT_EQ(g.edge(b.id, a.id)->placement, converse(ab->placement));
      }
  }
}

TEST(ContactGraph, WiderToleranceNeverRemovesEdges) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const Level level = random_scatter(rng, 12);
    const ContactGraph base(level, k);
    for (double extra : {0.001, 0.01, 0.024}) {
      const ContactGraph wide(level, k + 2 * extra);
      for (const auto& [id, list] : base.adjacency())
        for (const Contact& c : list) EXPECT_TRUE(wide.edge(id, c.other));
    }
  }
}
