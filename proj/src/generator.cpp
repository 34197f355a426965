#include "restart_reasoner/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "restart_reasoner/random.hpp"

namespace rr {

namespace {

constexpr double kWidth = 48.0;
constexpr double kHeight = 20.0;
constexpr double kFloor = 1.0;   // top of the ground slab
constexpr double kFirstX = 14.0;

struct Builder {
  std::mt19937_64& rng;
  std::vector<Block> blocks;
  int next_id = 1;

  int uniform(int lo, int hi) { return lo + static_cast<int>(pick_index(rng, hi - lo + 1)); }

  Material any_block() {
    static constexpr Material kinds[] = {Material::wood, Material::ice, Material::stone};
    return kinds[pick_index(rng, 3)];
  }

  void add(Material m, double x, double y, double w, double h) {
    blocks.push_back(Block{next_id++, m, x, y, w, h});
  }

  // Each builder returns the structure's width.
  double exposed(double x0) {
    switch (uniform(0, 2)) {
      case 0:
        add(Material::pig, x0, kFloor, 1, 1);
        return 1;
      case 1:
        add(Material::wood, x0, kFloor, 1, 1);
        add(Material::pig, x0, kFloor + 1, 1, 1);
        return 1;
      default:
        add(Material::pig, x0, kFloor, 1, 1);
        add(Material::pig, x0 + 1, kFloor, 1, 1);
        return 2;
    }
  }

  double row(double x0) {
    const int n = uniform(2, 4);
    for (int i = 0; i < n; ++i) add(any_block(), x0 + i, kFloor, 1, 1);
    add(Material::pig, x0 + n, kFloor, 1, 1);
    if (uniform(0, 1) == 1) add(Material::pig, x0 + uniform(0, n - 1), kFloor + 1, 1, 1);
    return n + 1;
  }

  double tower(double x0) {
    if (uniform(0, 1) == 0) {
      const int m = uniform(2, 3);
      for (int i = 0; i < m; ++i) add(any_block(), x0, kFloor + i, 1, 1);
      add(Material::pig, x0, kFloor + m, 1, 1);
      return 1;
    }
    const double h = 2.5 + 0.5 * uniform(0, 2);
    const double gap = 0.5 * uniform(1, 3);
    add(Material::wood, x0, kFloor, 0.5, h);
    add(Material::pig, x0 + 0.5 + gap, kFloor, 1, 1);
    return 1.5 + gap;
  }

  double shelf(double x0) {
    const Material column = uniform(0, 1) == 0 ? Material::wood : Material::stone;
    add(column, x0, kFloor, 1, 2);
    add(Material::pig, x0 + 1.5, kFloor, 1, 1);
    add(column, x0 + 3, kFloor, 1, 2);
    add(Material::wood, x0, kFloor + 2, 4, 0.5);
    return 4;
  }

  double vault(double x0) {
    add(Material::stone, x0, kFloor, 1, 1.5);
    add(Material::pig, x0 + 3, kFloor, 1, 1);
    add(Material::stone, x0 + 6, kFloor, 1, 1.5);
    add(Material::stone, x0, kFloor + 1.5, 7, 0.5);
    return 7;
  }

  double build(Style s, double x0) {
    switch (s) {
      case Style::exposed: return exposed(x0);
      case Style::row: return row(x0);
      case Style::tower: return tower(x0);
      case Style::shelf: return shelf(x0);
      case Style::vault: return vault(x0);
    }
    return 0;
  }
};

struct Draft {
  Level level;
  std::vector<Style> styles;
};

Draft draw(const GeneratorParams& p, std::mt19937_64& rng) {
  Builder b{rng, {}, 1};
  Draft d;
  const int structures =
      p.styles.size() == 1 ? 1 : b.uniform(p.min_structures, p.max_structures);
  double x = kFirstX + 0.25 * b.uniform(0, 8);
  for (int i = 0; i < structures; ++i) {
    const Style s = p.styles[pick_index(rng, p.styles.size())];
    const double w = b.build(s, x);
    d.styles.push_back(s);
    x += w + 2.0 + 0.5 * b.uniform(0, 2);
  }

  Level& level = d.level;
  level.width = kWidth;
  level.height = kHeight;
  level.sling = {4.0, 3.0};
  const int birds = b.uniform(p.min_birds, p.max_birds);
  static constexpr BirdKind kinds[] = {BirdKind::red, BirdKind::blue, BirdKind::yellow, BirdKind::black};
  for (int i = 0; i < birds; ++i) level.birds.push_back(kinds[pick_index(rng, 4)]);
  level.blocks.push_back(Block{0, Material::ground, 0, 0, kWidth, kFloor});
  for (Block& blk : b.blocks) level.blocks.push_back(blk);
  return d;
}

bool in_range(const GeneratorParams& p, const Level& level) {
  const auto blocks = static_cast<int>(level.non_ground_count());
  const auto pigs = static_cast<int>(level.pig_count());
  return blocks >= p.min_blocks && blocks <= p.max_blocks && pigs >= p.min_pigs && pigs <= p.max_pigs;
}

}  // namespace

std::string_view to_string(Style s) {
  switch (s) {
    case Style::exposed: return "exposed";
    case Style::row: return "row";
    case Style::tower: return "tower";
    case Style::shelf: return "under-shelf";
    case Style::vault: return "sealed-vault";
  }
  return "?";
}

std::optional<Style> parse_style(std::string_view s) {
  if (s == "exposed") return Style::exposed;
  if (s == "row") return Style::row;
  if (s == "tower") return Style::tower;
  if (s == "under-shelf" || s == "shelf") return Style::shelf;
  if (s == "sealed-vault" || s == "vault") return Style::vault;
  return std::nullopt;
}

std::vector<std::string> GeneratorParams::violations() const {
  std::vector<std::string> out;
  if (count < 0) out.push_back("count must be >= 0");
  if (min_structures < 1 || max_structures < min_structures || max_structures > 3)
    out.push_back("structures range must be within [1,3] and non-empty");
  if (min_blocks < 1 || max_blocks < min_blocks) out.push_back("blocks range must be non-empty and >= 1");
  if (min_pigs < 1 || max_pigs < min_pigs) out.push_back("pigs range must be non-empty and >= 1");
  if (min_birds < 1 || max_birds < min_birds) out.push_back("birds range must be non-empty and >= 1");
  if (styles.empty()) out.push_back("at least one style is required");
  return out;
}

std::vector<GeneratedLevel> generate_corpus(const GeneratorParams& params, std::uint64_t seed,
                                            const OracleConstants& oracle,
                                            const TrajectoryParams& trajectory) {
  if (auto v = params.violations(); !v.empty()) throw std::invalid_argument("generator: " + v.front());
  const bool exposed_only = params.styles.size() == 1 && params.styles.front() == Style::exposed;
  constexpr int kMaxDraws = 1000;

  std::vector<GeneratedLevel> out;
  for (int i = 0; i < params.count; ++i) {
    std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    std::optional<GeneratedLevel> found;
    for (int attempt = 0; attempt < kMaxDraws && !found; ++attempt) {
      Draft d = draw(params, rng);
      if (!in_range(params, d.level)) continue;
      if (auto v = validate(d.level, oracle.physics.k); !v.empty())
        throw std::logic_error("generator produced an invalid level: " + v.front());
      const bool label = oracle_solvable(LevelState(d.level), oracle, trajectory);
      if (exposed_only && !label) continue;
      found = GeneratedLevel{"gen-" + std::to_string(seed) + "-" + std::to_string(i), std::move(d.level),
                             std::move(d.styles), label};
    }
    if (!found) throw std::runtime_error("generator: could not satisfy the block/pig ranges");
    out.push_back(std::move(*found));
  }
  return out;
}

}  // namespace rr
