#include "restart_reasoner/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace rr {

std::string_view to_string(Placement p) {
  switch (p) {
    case Placement::left_of: return "left-of";
    case Placement::right_of: return "right-of";
    case Placement::above: return "above";
    case Placement::below: return "below";
  }
  return "?";
}

std::optional<Contact> classify_contact(const Block& a, const Block& b, double k) {
  // Signed separations; negative values are overlap lengths.
  const double sx = std::max(a.left() - b.right(), b.left() - a.right());
  const double sy = std::max(a.bottom() - b.top(), b.bottom() - a.top());
  if (sx > k || sy > k) return std::nullopt;

  Contact c;
  c.other = b.id;
  const bool side = sx > sy;
  if (side) {
    const double acx = a.x + 0.5 * a.width;
    const double bcx = b.x + 0.5 * b.width;
    c.placement = bcx >= acx ? Placement::right_of : Placement::left_of;
    c.face = -sy > k;
  } else {
    const double acy = a.y + 0.5 * a.height;
    const double bcy = b.y + 0.5 * b.height;
    c.placement = bcy >= acy ? Placement::above : Placement::below;
    c.face = -sx > k;
  }
  return c;
}

ContactGraph::ContactGraph(const Level& level, double k) : k_(k) {
  for (const Block& b : level.blocks) adjacency_[b.id];
  for (std::size_t i = 0; i < level.blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < level.blocks.size(); ++j) {
      const Block& a = level.blocks[i];
      const Block& b = level.blocks[j];
      auto ab = classify_contact(a, b, k);
      if (!ab) continue;
      // Derive the reverse edge from the forward one so labels stay converse
      // even on exact centre ties.
      Contact ba{a.id, converse(ab->placement), ab->face};
      adjacency_[a.id].push_back(*ab);
      adjacency_[b.id].push_back(ba);
    }
  }
  for (auto& [id, list] : adjacency_)
    std::sort(list.begin(), list.end(),
              [](const Contact& x, const Contact& y) { return x.other < y.other; });
}

std::span<const Contact> ContactGraph::neighbors(int id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) return {};
  return it->second;
}

std::optional<Contact> ContactGraph::edge(int from, int to) const {
  for (const Contact& c : neighbors(from))
    if (c.other == to) return c;
  return std::nullopt;
}

std::size_t ContactGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& [id, list] : adjacency_) n += list.size();
  return n / 2;
}

ContactGraph contact_graph(const Level& level, double k) { return ContactGraph(level, k); }

bool Region::contains(Point p) const {
  const double dx = p.x - pivot.x;
  const double dy = p.y - pivot.y;
  if (dy < 0.0) return false;
  if (direction == FallDirection::rightward ? dx < 0.0 : dx > 0.0) return false;
  return dx * dx + dy * dy <= radius * radius;
}

bool Region::intersects(const Block& b) const {
  // Clip the rectangle to the quadrant, then test the clipped rectangle's
  // nearest point to the pivot against the radius.
  double lo_x = b.left();
  double hi_x = b.right();
  if (direction == FallDirection::rightward)
    lo_x = std::max(lo_x, pivot.x);
  else
    hi_x = std::min(hi_x, pivot.x);
  const double lo_y = std::max(b.bottom(), pivot.y);
  const double hi_y = b.top();
  if (!(hi_x > lo_x) || !(hi_y > lo_y)) return false;

  const double nx = std::clamp(pivot.x, lo_x, hi_x) - pivot.x;
  const double ny = std::clamp(pivot.y, lo_y, hi_y) - pivot.y;
  return nx * nx + ny * ny < radius * radius;
}

double Region::area() const { return std::numbers::pi * radius * radius / 4.0; }

Region fall_arc(const Block& block, FallDirection direction) {
  if (block.is_ground()) throw LevelError("ground block " + std::to_string(block.id) + " cannot fall");
  Region r;
  r.direction = direction;
  r.radius = block.height;
  r.pivot = direction == FallDirection::rightward ? Point{block.right(), block.bottom()}
                                                  : Point{block.left(), block.bottom()};
  return r;
}

std::vector<int> supp(const Block& block, const Level& level, const ContactGraph& graph) {
  std::set<int> visited;
  std::vector<int> frontier{block.id};
  while (!frontier.empty()) {
    const int id = frontier.back();
    frontier.pop_back();
    for (const Contact& c : graph.neighbors(id)) {
      if (c.placement != Placement::below || !c.face) continue;
      const Block* other = level.find(c.other);
      if (!other || other->is_ground() || other->id == block.id) continue;
      if (visited.insert(c.other).second) frontier.push_back(c.other);
    }
  }
  return {visited.begin(), visited.end()};
}

std::vector<int> supp(const Block& block, const Level& level, double k) {
  return supp(block, level, ContactGraph(level, k));
}

double horizontal_gap(const Block& from, const Block& to) {
  return std::max(0.0, to.left() - from.right());
}

}  // namespace rr
