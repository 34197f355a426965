#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "restart_reasoner/level.hpp"
#include "restart_reasoner/oracle.hpp"
#include "restart_reasoner/trajectory.hpp"

namespace rr {

/// Structure templates. Every one carries at least one pig.
///   exposed: pig on the ground, on a pedestal, or two pigs side by side
///   row:     a row of blocks with a pig at the far end
///   tower:   a stack topped by a pig, or a tall plank next to a pig
///   shelf:   pig under a beam resting on two columns
///   vault:   pig sealed by stone walls and a stone roof
enum class Style { exposed, row, tower, shelf, vault };

inline constexpr Style kAllStyles[] = {Style::exposed, Style::row, Style::tower, Style::shelf, Style::vault};

std::string_view to_string(Style s);
std::optional<Style> parse_style(std::string_view s);

struct GeneratorParams {
  int count = 20;
  int min_structures = 1;
  int max_structures = 3;
  int min_blocks = 1;   // non-ground blocks, pigs included
  int max_blocks = 30;
  int min_pigs = 1;
  int max_pigs = 4;
  int min_birds = 1;
  int max_birds = 4;
  std::vector<Style> styles{std::begin(kAllStyles), std::end(kAllStyles)};

  std::vector<std::string> violations() const;
};

struct GeneratedLevel {
  std::string id;  // gen-<seed>-<index>
  Level level;
  std::vector<Style> styles;
  bool oracle_solvable = false;
};

/// Deterministic in (params, seed). Every level passes validate. When only
/// one style is requested each level holds exactly one structure, and
/// exposed-only levels are re-drawn until the oracle can clear them in one
/// shot. Throws std::invalid_argument on bad params and std::runtime_error
/// when the ranges cannot be satisfied.
std::vector<GeneratedLevel> generate_corpus(const GeneratorParams& params, std::uint64_t seed,
                                            const OracleConstants& oracle,
                                            const TrajectoryParams& trajectory);

}  // namespace rr
