#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "restart_reasoner/level.hpp"

namespace rr {

/// Closed-interval overlap: true iff [a_lo, a_hi] and [b_lo, b_hi] share a point.
constexpr bool overlaps_1d(double a_lo, double a_hi, double b_lo, double b_hi) {
  return a_lo <= b_hi && b_lo <= a_hi;
}

/// Where a neighbour sits relative to the block whose adjacency list holds it.
enum class Placement { left_of, right_of, above, below };

constexpr Placement converse(Placement p) {
  switch (p) {
    case Placement::left_of: return Placement::right_of;
    case Placement::right_of: return Placement::left_of;
    case Placement::above: return Placement::below;
    case Placement::below: return Placement::above;
  }
  return p;
}

std::string_view to_string(Placement p);

struct Contact {
  int other = 0;
  Placement placement = Placement::right_of;
  /// The touching faces share more than the tolerance along the contact
  /// edge. Corner-only touches are contacts but not face contacts.
  bool face = false;

  friend bool operator==(const Contact&, const Contact&) = default;
};

/// Symmetric touch relation between blocks. An edge exists iff the two
/// rectangles, each dilated by k/2, intersect.
class ContactGraph {
 public:
  ContactGraph() = default;
  ContactGraph(const Level& level, double k);

  std::span<const Contact> neighbors(int id) const;
  std::optional<Contact> edge(int from, int to) const;
  std::size_t edge_count() const;  // undirected
  double tolerance() const { return k_; }
  const std::map<int, std::vector<Contact>>& adjacency() const { return adjacency_; }

 private:
  std::map<int, std::vector<Contact>> adjacency_;
  double k_ = kDefaultContactTolerance;
};

ContactGraph contact_graph(const Level& level, double k = kDefaultContactTolerance);

/// Placement of `b` relative to `a`, or nullopt when the dilated rectangles
/// do not touch.
std::optional<Contact> classify_contact(const Block& a, const Block& b, double k);

enum class FallDirection { rightward, leftward };

/// Quarter disc swept by the top corner of a block toppling about its bottom
/// corner on the fall side.
struct Region {
  Point pivot;
  double radius = 0.0;
  FallDirection direction = FallDirection::rightward;

  /// Closed containment.
  bool contains(Point p) const;
  /// True when the region and the rectangle share a set of positive area.
  bool intersects(const Block& b) const;
  double area() const;
};

/// Throws LevelError for ground blocks.
Region fall_arc(const Block& block, FallDirection direction = FallDirection::rightward);

/// Every non-ground block reachable from `block` by repeatedly following
/// face contacts labelled `below`. Sorted by id; terminates on cycles.
std::vector<int> supp(const Block& block, const Level& level, const ContactGraph& graph);
std::vector<int> supp(const Block& block, const Level& level,
                      double k = kDefaultContactTolerance);

/// Horizontal gap from the right face of `from` to the left face of `to`,
/// clamped at zero.
double horizontal_gap(const Block& from, const Block& to);

}  // namespace rr
