#include "restart_reasoner/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace rr {

namespace {

bool in_unit_interval(double v) { return v > 0.0 && v <= 1.0; }

std::size_t material_index(Material m) { return static_cast<std::size_t>(m); }

}  // namespace

std::string_view to_string(ThrownForceLaw law) {
  return law == ThrownForceLaw::exponential ? "exponential" : "literal";
}

KillThresholds::KillThresholds() {
  values_[material_index(Material::wood)] = 0.3;
  values_[material_index(Material::ice)] = 0.2;
  values_[material_index(Material::stone)] = 0.7;
  values_[material_index(Material::pig)] = 0.1;
  values_[material_index(Material::ground)] = std::numeric_limits<double>::infinity();
}

double KillThresholds::operator[](Material m) const { return values_[material_index(m)]; }

void KillThresholds::set(Material m, double force) {
  if (m == Material::ground) throw std::invalid_argument("ground has no kill threshold");
  values_[material_index(m)] = force;
}

std::vector<std::string> PropagationConstants::violations() const {
  std::vector<std::string> out;
  if (!in_unit_interval(c)) out.push_back("c must be in (0,1]");
  if (!in_unit_interval(c1)) out.push_back("c1 must be in (0,1]");
  if (!in_unit_interval(c_l)) out.push_back("c_l must be in (0,1]");
  if (!(k >= 0.0)) out.push_back("k must be >= 0");
  if (!(s1 > 0.0)) out.push_back("s1 must be > 0");
  if (!(d_max > 0.0)) out.push_back("d_max must be > 0");
  if (!(h_max > 0.0)) out.push_back("h_max must be > 0");
  if (!(f_floor > 0.0)) out.push_back("f_floor must be > 0");
  for (Material m : {Material::wood, Material::ice, Material::stone, Material::pig})
    if (!(kill[m] > 0.0)) out.push_back("kill." + std::string(to_string(m)) + " must be > 0");
  return out;
}

void PropagationConstants::check() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid propagation constants:";
  for (const auto& s : v) msg += " " + s + ";";
  throw std::invalid_argument(msg);
}

double quantize_force(double f) { return std::round(f * 1e6) / 1e6; }

double ForceMap::force(int id) const {
  auto it = forces.find(id);
  return it == forces.end() ? 0.0 : it->second;
}

bool ForceMap::is_destroyed(int id) const {
  return std::binary_search(destroyed.begin(), destroyed.end(), id);
}

std::vector<int> direct_targets(const Block& o1, const Level& level, const ContactGraph& graph) {
  std::vector<int> out;
  for (const Contact& c : graph.neighbors(o1.id)) {
    if (!c.face || c.placement == Placement::left_of || c.other == o1.id) continue;
    const Block* other = level.find(c.other);
    if (!other || other->is_ground()) continue;
    out.push_back(c.other);
  }
  return out;
}

std::vector<int> direct_targets(const Block& o1, const Level& level, double k) {
  return direct_targets(o1, level, ContactGraph(level, k));
}

double direct_force(double f1, int n, const PropagationConstants& constants) {
  if (n <= 0) throw std::invalid_argument("direct_force: no targets to share the force");
  return (f1 / n) * constants.c;
}

bool falling_applies(const Block& o1, const Block& o2, const Level& level,
                     const ContactGraph& graph) {
  if (o1.id == o2.id || o1.is_ground() || o2.is_ground()) return false;
  const auto direct = direct_targets(o1, level, graph);
  if (std::find(direct.begin(), direct.end(), o2.id) != direct.end()) return false;
  if (!(o2.left() < o1.right() + o1.height)) return false;
  return fall_arc(o1, FallDirection::rightward).intersects(o2);
}

bool falling_applies(const Block& o1, const Block& o2, const Level& level, double k) {
  return falling_applies(o1, o2, level, ContactGraph(level, k));
}

double falling_force(double f1, double d, double h, const PropagationConstants& constants) {
  if (!(h > 0.0)) throw std::invalid_argument("falling_force: faller height must be positive");
  const double f = f1 * constants.c1 * std::sin(std::numbers::pi * d / h);
  return std::max(0.0, f);
}

bool structure_falling_applies(const Block& o1, const Block& o2, const Level& level,
                               const ContactGraph& graph) {
  if (o1.id == o2.id || o1.is_ground() || o2.is_ground()) return false;
  // A support's own arc never meets the support itself, so siblings in the
  // same structure can be knocked by each other's arcs.
  for (int s : supp(o1, level, graph))
    if (fall_arc(level.at(s), FallDirection::rightward).intersects(o2)) return true;
  return false;
}

bool structure_falling_applies(const Block& o1, const Block& o2, const Level& level, double k) {
  return structure_falling_applies(o1, o2, level, ContactGraph(level, k));
}

bool thrown_applies(const Block& o1, const Block& o2, const PropagationConstants& constants) {
  if (o1.id == o2.id || o1.is_ground() || o2.is_ground()) return false;
  if (!(o1.area() < constants.s1)) return false;
  if (!(o1.right() <= o2.left() + constants.k)) return false;  // o1 left of o2
  if (!(o2.left() < o1.right() + constants.d_max)) return false;
  return o2.bottom() < o1.bottom() + constants.h_max;
}

double thrown_force(double f1, double travel, const PropagationConstants& constants) {
  travel = std::max(0.0, travel);
  if (constants.thrown_law == ThrownForceLaw::literal) return f1 * constants.c * constants.c_l * travel;
  return f1 * constants.c * std::pow(constants.c_l, travel);
}

PropagationModel::PropagationModel(const Level& level, PropagationConstants constants)
    : constants_(std::move(constants)), graph_(level, constants_.k) {
  constants_.check();
  for (const Block& b : level.blocks)
    if (!b.is_ground()) blocks_.push_back(b);
  std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.id < b.id; });
  for (const Block& b : blocks_) ids_.push_back(b.id);

  auto index_of = [this](int id) {
    return static_cast<std::size_t>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
  };

  edges_.resize(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& o1 = blocks_[i];
    Edges& e = edges_[i];
    for (int id : direct_targets(o1, level, graph_)) e.direct.push_back(index_of(id));

    std::vector<Region> support_arcs;
    for (int s : supp(o1, level, graph_)) support_arcs.push_back(fall_arc(level.at(s)));

    for (std::size_t j = 0; j < blocks_.size(); ++j) {
      if (i == j) continue;
      const Block& o2 = blocks_[j];
      const bool is_direct = std::find(e.direct.begin(), e.direct.end(), j) != e.direct.end();
      if (!is_direct && o2.left() < o1.right() + o1.height &&
          fall_arc(o1).intersects(o2))
        e.falling.emplace_back(j, std::min(horizontal_gap(o1, o2), o1.height));
      if (std::any_of(support_arcs.begin(), support_arcs.end(),
                      [&](const Region& r) { return r.intersects(o2); }))
        e.structure.push_back(j);
      if (thrown_applies(o1, o2, constants_)) e.thrown.emplace_back(j, horizontal_gap(o1, o2));
    }
  }
}

ForceMap PropagationModel::propagate(int impact_block, double f0) const {
  if (!(f0 >= constants_.f_floor))
    throw std::invalid_argument("propagate: initial force below the propagation floor");
  auto it = std::lower_bound(ids_.begin(), ids_.end(), impact_block);
  if (it == ids_.end() || *it != impact_block)
    throw std::invalid_argument("propagate: block " + std::to_string(impact_block) +
                                " is missing or ground");
  const std::size_t start = static_cast<std::size_t>(it - ids_.begin());

  std::vector<double> best(blocks_.size(), 0.0);
  std::vector<bool> seen(blocks_.size(), false);

  // Largest force first; ties pop the lower id first.
  using Entry = std::pair<double, std::size_t>;
  auto cmp = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> pending(cmp);

  best[start] = f0;
  seen[start] = true;
  pending.emplace(f0, start);

  auto offer = [&](std::size_t target, double raw) {
    const double f = std::min(f0, quantize_force(raw));
    if (f < constants_.f_floor) return;
    if (seen[target] && !(f > best[target])) return;
    best[target] = f;
    seen[target] = true;
    pending.emplace(f, target);
  };

  while (!pending.empty()) {
    const auto [f, i] = pending.top();
    pending.pop();
    if (f < best[i]) continue;  // stale entry
    const Edges& e = edges_[i];
    const Block& source = blocks_[i];

    const int n = static_cast<int>(e.direct.size());
    for (std::size_t t : e.direct) offer(t, direct_force(f, n, constants_));
    for (const auto& [t, gap] : e.falling) offer(t, falling_force(f, gap, source.height, constants_));
    for (std::size_t t : e.structure) offer(t, f);
    for (const auto& [t, travel] : e.thrown) offer(t, thrown_force(f, travel, constants_));
  }

  ForceMap out;
  out.impact_block = impact_block;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (!seen[i]) continue;
    out.forces.emplace(ids_[i], best[i]);
    if (best[i] >= constants_.kill[blocks_[i].material]) out.destroyed.push_back(ids_[i]);
  }
  return out;
}

ForceMap propagate(const Level& level, int impact_block, double f0,
                   const PropagationConstants& constants) {
  return PropagationModel(level, constants).propagate(impact_block, f0);
}

double PropagationMatrix::by_id(int source, int target) const {
  auto r = std::lower_bound(ids.begin(), ids.end(), source);
  auto c = std::lower_bound(ids.begin(), ids.end(), target);
  if (r == ids.end() || *r != source || c == ids.end() || *c != target)
    throw std::out_of_range("propagation matrix has no entry for the given ids");
  return at(static_cast<std::size_t>(r - ids.begin()), static_cast<std::size_t>(c - ids.begin()));
}

PropagationMatrix propagation_matrix(const Level& level, const PropagationConstants& constants) {
  PropagationModel model(level, constants);
  PropagationMatrix m;
  m.ids = model.block_ids();
  const std::size_t n = m.ids.size();
  m.values.assign(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    const ForceMap fm = model.propagate(m.ids[r], 1.0);
    for (std::size_t c = 0; c < n; ++c) m.values[r * n + c] = fm.force(m.ids[c]);
  }
  return m;
}

}  // namespace rr
