#pragma once

#include <string>
#include <vector>

#include "restart_reasoner/level.hpp"

namespace rr::test {

inline Block blk(int id, Material m, double x, double y, double w = 1.0, double h = 1.0) {
  return Block{id, m, x, y, w, h};
}

/// 48x20 world, sling at (4,3), ground slab id 0 of height 1.
inline Level world(std::vector<Block> blocks, std::vector<BirdKind> birds = {BirdKind::red}) {
  Level level;
  level.sling = {4.0, 3.0};
  level.birds = std::move(birds);
  level.width = 48.0;
  level.height = 20.0;
  level.blocks.push_back(Block{0, Material::ground, 0.0, 0.0, 48.0, 1.0});
  for (Block& b : blocks) level.blocks.push_back(b);
  return level;
}

/// Same world without the ground slab, for pure geometry/propagation cases.
inline Level floating(std::vector<Block> blocks, std::vector<BirdKind> birds = {BirdKind::red}) {
  Level level;
  level.sling = {0.0, 0.0};
  level.birds = std::move(birds);
  level.width = 100.0;
  level.height = 100.0;
  level.blocks = std::move(blocks);
  return level;
}

/// Pig sealed by stone walls and a stone roof; nothing reaches it.
inline Level vault(std::vector<BirdKind> birds = {BirdKind::red}) {
  return world({blk(1, Material::stone, 20, 1, 1, 1.5), blk(2, Material::pig, 23, 1),
                blk(3, Material::stone, 26, 1, 1, 1.5), blk(4, Material::stone, 20, 2.5, 7, 0.5)},
               std::move(birds));
}

inline Level exposed_pig(std::vector<BirdKind> birds = {BirdKind::red}) {
  return world({blk(1, Material::pig, 20, 1)}, std::move(birds));
}

inline std::string fixture_path(const std::string& name) {
  return std::string(RR_FIXTURE_DIR) + "/" + name;
}

}  // namespace rr::test
