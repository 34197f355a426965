#include <gtest/gtest.h>

#include <random>

#include "restart_reasoner/generator.hpp"
#include "restart_reasoner/heuristics.hpp"
#include "restart_reasoner/oracle.hpp"
#include "support.hpp"

using namespace rr;
using rr::test::blk;

namespace {

const std::array<double, 4> kDefaultWeights{0.2, 0.2, 0.2, 0.4};

ShotOutcome outcome(double change, Material hit, BirdKind bird, double score = 0.0) {
  ShotOutcome o;
  o.change_fraction = change;
  o.hit_material = hit;
  o.bird = bird;
  o.score_delta = score;
  return o;
}

}  // namespace

TEST(ScoreH, Examples) {
  EXPECT_NEAR(score_h(0, 5000), 1.0, 1e-12);
  EXPECT_NEAR(score_h(2500, 5000), 0.5, 1e-12);
  EXPECT_NEAR(score_h(6000, 5000), 0.0, 1e-12);
  EXPECT_THROW(score_h(0, 0), std::invalid_argument);
  EXPECT_THROW(score_h(0, -1), std::invalid_argument);
}

TEST(ScoreH, NonIncreasing) {
  double prev = 2.0;
  for (double ds = 0; ds <= 8000; ds += 125) {
    const double v = score_h(ds, 5000);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(GoodUse, Examples) {
  const RestartConfig cfg = RestartConfig::defaults();
  const GoodUse yellow = good_use_components(outcome(0.4, Material::wood, BirdKind::yellow), cfg);
  EXPECT_NEAR(yellow.change_term, 0.6, 1e-12);
  EXPECT_EQ(yellow.type_term, 0.0);

  const GoodUse blue = good_use_components(outcome(0.0, Material::stone, BirdKind::blue), cfg);
  EXPECT_EQ(blue.change_term, 1.0);
  EXPECT_EQ(blue.type_term, 1.0);

  const GoodUse all = good_use_components(outcome(1.0, Material::ice, BirdKind::blue), cfg);
  EXPECT_EQ(all.change_term, 0.0);
  EXPECT_EQ(all.type_term, 0.0);
  EXPECT_EQ(good_use_components(outcome(1.0, Material::stone, BirdKind::red), cfg).type_term, 0.0);
  EXPECT_EQ(good_use_components(outcome(1.0, Material::pig, BirdKind::red), cfg).type_term, 1.0);
}

TEST(RestartScore, Examples) {
  EXPECT_NEAR(restart_score({1, 1, 1, 1}, kDefaultWeights), 1.0, 1e-12);
  EXPECT_NEAR(restart_score({0, 0, 0, 0}, kDefaultWeights), 0.0, 1e-12);
  EXPECT_NEAR(restart_score({1, 0, 1, 0}, kDefaultWeights), 0.4, 1e-12);
}

TEST(RestartScore, MonotoneInTermsAndWeights) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    RestartTerms t{u(rng), u(rng), u(rng), u(rng)};
    std::array<double, 4> w{u(rng), u(rng), u(rng), u(rng)};
    const double base = restart_score(t, w);
    const std::size_t j = i % 4;
    RestartTerms t2 = t;
    (j == 0 ? t2.change : j == 1 ? t2.type : j == 2 ? t2.score : t2.unsolvable) += 0.1 * u(rng);
    EXPECT_GE(restart_score(t2, w), base);
    std::array<double, 4> w2 = w;
    w2[j] += 0.1 * u(rng);
    EXPECT_GE(restart_score(t, w2), base);
  }
}

TEST(ShouldRestart, LastBirdUnsolvable) {
  const LevelState state(test::vault());
  const RestartDecision d = should_restart(state, std::nullopt, RestartConfig::defaults(), {}, {});
  EXPECT_TRUE(d.restart);
  EXPECT_TRUE(d.hard_rule);
  EXPECT_EQ(d.predicted_solvable, std::optional<bool>(false));
  EXPECT_NEAR(d.score, 0.4, 1e-12);
}

TEST(ShouldRestart, ExcellentShotWithThreeBirds) {
  const LevelState state(test::exposed_pig({BirdKind::red, BirdKind::red, BirdKind::red}));
  const RestartDecision d = should_restart(state, outcome(1.0, Material::wood, BirdKind::red, 9000),
                                           RestartConfig::defaults(), {}, {});
  EXPECT_FALSE(d.restart);
  EXPECT_EQ(d.score, 0.0);
  EXPECT_FALSE(d.predicted_solvable);
}

TEST(ShouldRestart, PoorShotWithTwoBirds) {
  const LevelState state(test::exposed_pig({BirdKind::red, BirdKind::red}));
  const RestartDecision d = should_restart(state, outcome(0.0, Material::pig, BirdKind::red, 0),
                                           RestartConfig::defaults(), {}, {});
  EXPECT_EQ(d.terms, (RestartTerms{1, 1, 1, 0}));
  EXPECT_NEAR(d.score, 0.6, 1e-12);
  EXPECT_TRUE(d.restart);
  EXPECT_FALSE(d.hard_rule);
}

TEST(ShouldRestart, HardRuleForAnyWeights) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    RestartConfig cfg = RestartConfig::defaults();
    cfg.weights = {u(rng), u(rng), u(rng), u(rng)};
    cfg.restart_threshold = u(rng);
    EXPECT_TRUE(decide_restart(outcome(u(rng), Material::wood, BirdKind::red, 3000 * u(rng)), false, cfg).restart);
    EXPECT_TRUE(decide_restart(std::nullopt, false, cfg).restart);
  }
}

TEST(Solvable, ExposedPig) {
  const SolvabilityVerdict v = solvable_one_shot(test::exposed_pig(), {}, {});
  EXPECT_TRUE(v.solvable);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->shot.target_block, 1);
  EXPECT_TRUE(v.witness->forces.is_destroyed(1));
  EXPECT_TRUE(v.pigs_unkillable.empty());
}

TEST(Solvable, SealedVault) {
  const SolvabilityVerdict v = solvable_one_shot(test::vault(), {}, {});
  EXPECT_FALSE(v.solvable);
  EXPECT_FALSE(v.witness);
  EXPECT_EQ(v.pigs_unkillable, std::vector<int>{2});
}

TEST(Solvable, TwoPigsFarApart) {
  const Level level = load_level_file(test::fixture_path("two_pigs_apart.json"));
  const SolvabilityVerdict v = solvable_one_shot(level, {}, {});
  EXPECT_FALSE(v.solvable);
  EXPECT_EQ(v.pigs_unkillable.size(), 1u);
  // Each pig alone is killable.
  const auto r = reachable_blocks(level, {});
  EXPECT_TRUE(r.count(1) && r.count(2));
}

TEST(Solvable, Errors) {
  Level no_birds = test::exposed_pig({});
  EXPECT_THROW(solvable_one_shot(no_birds, {}, {}), LevelError);
  const Level no_pigs = test::world({blk(1, Material::wood, 20, 1)});
  EXPECT_THROW(solvable_one_shot(no_pigs, {}, {}), LevelError);
}

TEST(Solvable, SupersetUnderWeakerConstants) {
  GeneratorParams params;
  params.count = 40;
  PropagationConstants weak;
  weak.c = 0.6;
  weak.c1 = 0.7;
  weak.c_l = 0.8;
  int weak_solvable = 0;
  for (const GeneratedLevel& g : generate_corpus(params, 21, OracleConstants::attenuated({}), {})) {
    if (!solvable_one_shot(g.level, weak, {}).solvable) continue;
    ++weak_solvable;
    EXPECT_TRUE(solvable_one_shot(g.level, {}, {}).solvable) << g.id;
  }
  EXPECT_GT(weak_solvable, 0);
}

TEST(RestartConfig, DefaultsAndChecks) {
  RestartConfig cfg = RestartConfig::defaults();
  EXPECT_EQ(cfg.threshold_for(BirdKind::red), 5000);
  EXPECT_EQ(cfg.threshold_for(BirdKind::blue), 6000);
  EXPECT_EQ(cfg.threshold_for(BirdKind::yellow), 7000);
  EXPECT_EQ(cfg.threshold_for(BirdKind::black), 10000);
  EXPECT_TRUE(cfg.violations().empty());
  EXPECT_TRUE(cfg.warnings().empty());
  cfg.weights = {0.5, 0.5, 0.5, 0.5};
  EXPECT_EQ(cfg.warnings().size(), 1u);
  cfg.thresholds[BirdKind::red] = 0;
  EXPECT_EQ(cfg.violations().size(), 1u);
}
