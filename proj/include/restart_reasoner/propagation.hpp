#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "restart_reasoner/geometry.hpp"
#include "restart_reasoner/level.hpp"

namespace rr {

/// How a thrown block's force decays with flight distance.
///  exponential: f * c * c_l^travel   (loss compounds per unit travelled)
///  literal:     f * c * c_l * travel (grows with distance; kept for comparison)
enum class ThrownForceLaw { exponential, literal };

std::string_view to_string(ThrownForceLaw law);

/// Minimum received force that destroys a block of each material. Ground is
/// never destroyed.
class KillThresholds {
 public:
  KillThresholds();
  double operator[](Material m) const;
  void set(Material m, double force);

  friend bool operator==(const KillThresholds&, const KillThresholds&) = default;

 private:
  std::array<double, 5> values_;
};

struct PropagationConstants {
  double c = 1.0;         // direct-contact loss factor
  double c1 = 1.0;        // falling loss factor
  double c_l = 1.0;       // thrown loss per unit of travel
  double k = kDefaultContactTolerance;
  double s1 = 1.0;        // thrown blocks must have area below this
  double d_max = 3.0;     // thrown horizontal reach
  double h_max = 2.0;     // thrown vertical reach
  double f_floor = 0.01;  // forces below this are not propagated
  KillThresholds kill;
  ThrownForceLaw thrown_law = ThrownForceLaw::exponential;

  std::vector<std::string> violations() const;
  /// Throws std::invalid_argument listing every violation.
  void check() const;

  friend bool operator==(const PropagationConstants&, const PropagationConstants&) = default;
};

/// Forces are recorded on a 1e-6 grid so the best-first search terminates.
double quantize_force(double f);

struct ForceMap {
  int impact_block = 0;
  std::map<int, double> forces;  // block id -> strongest force received
  std::vector<int> destroyed;    // sorted ids with force >= kill(material)

  double force(int id) const;
  bool is_destroyed(int id) const;

  friend bool operator==(const ForceMap&, const ForceMap&) = default;
};

// Single-rule predicates and force laws.

/// Blocks pushed by a rightward force on o1: face contacts to its right,
/// above or below. Ground never receives force.
std::vector<int> direct_targets(const Block& o1, const Level& level, const ContactGraph& graph);
std::vector<int> direct_targets(const Block& o1, const Level& level,
                                double k = kDefaultContactTolerance);

/// (f1 / n) * c. Throws std::invalid_argument for n == 0.
double direct_force(double f1, int n, const PropagationConstants& constants);

bool falling_applies(const Block& o1, const Block& o2, const Level& level,
                     const ContactGraph& graph);
bool falling_applies(const Block& o1, const Block& o2, const Level& level,
                     double k = kDefaultContactTolerance);

/// f1 * c1 * sin(pi * d / h), clamped below at zero. Throws for h <= 0.
double falling_force(double f1, double d, double h, const PropagationConstants& constants);

/// True when o2 meets the union of the rightward fall arcs of o1's supports.
/// The receiving block gets the full force.
bool structure_falling_applies(const Block& o1, const Block& o2, const Level& level,
                               const ContactGraph& graph);
bool structure_falling_applies(const Block& o1, const Block& o2, const Level& level,
                               double k = kDefaultContactTolerance);

bool thrown_applies(const Block& o1, const Block& o2, const PropagationConstants& constants);

double thrown_force(double f1, double travel, const PropagationConstants& constants);

/// Rule edges of one level, precomputed once and reused for many impacts.
class PropagationModel {
 public:
  PropagationModel(const Level& level, PropagationConstants constants);

  /// Best-first spread of a rightward impact. Throws std::invalid_argument
  /// when f0 < f_floor or the impact block is ground or missing.
  ForceMap propagate(int impact_block, double f0 = 1.0) const;

  const PropagationConstants& constants() const { return constants_; }
  const std::vector<int>& block_ids() const { return ids_; }
  const ContactGraph& graph() const { return graph_; }

 private:
  struct Edges {
    std::vector<std::size_t> direct;
    std::vector<std::pair<std::size_t, double>> falling;  // target, gap
    std::vector<std::size_t> structure;
    std::vector<std::pair<std::size_t, double>> thrown;   // target, travel
  };

  PropagationConstants constants_;
  ContactGraph graph_;
  std::vector<Block> blocks_;  // non-ground, sorted by id
  std::vector<int> ids_;
  std::vector<Edges> edges_;
};

ForceMap propagate(const Level& level, int impact_block, double f0,
                   const PropagationConstants& constants);

/// Row i is propagate(level, block i, 1.0).forces over non-ground blocks;
/// unreachable entries are 0.
struct PropagationMatrix {
  std::vector<int> ids;
  std::vector<double> values;  // row-major, ids.size() squared

  double at(std::size_t row, std::size_t col) const { return values[row * ids.size() + col]; }
  double by_id(int source, int target) const;
};

PropagationMatrix propagation_matrix(const Level& level, const PropagationConstants& constants);

}  // namespace rr
