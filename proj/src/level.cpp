#include "restart_reasoner/level.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace rr {

namespace {

constexpr double kBoundsSlack = 1e-9;

struct LineCol {
  std::size_t line = 1;
  std::size_t column = 1;
};

LineCol locate(std::string_view text, std::size_t byte) {
  LineCol lc;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i + 1 < end; ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

double number_field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'", 0, 0);
  const auto& v = j.at(key);
  if (!v.is_number()) throw ParseError(where + ": field '" + key + "' must be a number", 0, 0);
  return round_micro(v.get<double>());
}

std::pair<double, double> pair_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0, 0);
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(std::string("field '") + key + "' must be a two-number array", 0, 0);
  return {round_micro(v[0].get<double>()), round_micro(v[1].get<double>())};
}

}  // namespace

std::string_view to_string(Material m) {
  switch (m) {
    case Material::wood: return "wood";
    case Material::ice: return "ice";
    case Material::stone: return "stone";
    case Material::pig: return "pig";
    case Material::ground: return "ground";
  }
  return "?";
}

std::string_view to_string(BirdKind b) {
  switch (b) {
    case BirdKind::red: return "red";
    case BirdKind::blue: return "blue";
    case BirdKind::yellow: return "yellow";
    case BirdKind::black: return "black";
    case BirdKind::white: return "white";
  }
  return "?";
}

std::optional<Material> parse_material(std::string_view s) {
  for (Material m : kAllMaterials)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

std::optional<BirdKind> parse_bird(std::string_view s) {
  for (BirdKind b : kAllBirds)
    if (to_string(b) == s) return b;
  return std::nullopt;
}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : LevelError(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                                std::to_string(column) + ")"
                          : what),
      line_(line),
      column_(column) {}

InvariantError::InvariantError(const std::string& what, std::vector<int> block_ids)
    : LevelError(what), block_ids_(std::move(block_ids)) {}

const Block* Level::find(int id) const {
  auto it = std::lower_bound(blocks.begin(), blocks.end(), id,
                             [](const Block& b, int v) { return b.id < v; });
  if (it != blocks.end() && it->id == id) return &*it;
  // Unsorted input (read_level keeps file order until validated).
  for (const Block& b : blocks)
    if (b.id == id) return &b;
  return nullptr;
}

const Block& Level::at(int id) const {
  const Block* b = find(id);
  if (!b) throw LevelError("no block with id " + std::to_string(id));
  return *b;
}

std::vector<int> Level::pig_ids() const {
  std::vector<int> ids;
  for (const Block& b : blocks)
    if (b.is_pig()) ids.push_back(b.id);
  return ids;
}

std::size_t Level::pig_count() const {
  return static_cast<std::size_t>(
      std::count_if(blocks.begin(), blocks.end(), [](const Block& b) { return b.is_pig(); }));
}

std::size_t Level::non_ground_count() const {
  return static_cast<std::size_t>(
      std::count_if(blocks.begin(), blocks.end(), [](const Block& b) { return !b.is_ground(); }));
}

double round_micro(double v) {
  const double r = std::round(v * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;  // no negative zero
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", round_micro(v));
  std::string s(buf);
  if (auto dot = s.find('.'); dot != std::string::npos) {
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

namespace {

struct Violation {
  std::string message;
  std::vector<int> ids;
};

std::vector<Violation> find_violations(const Level& level, double k) {
  std::vector<Violation> out;
  if (level.width <= 0.0 || level.height <= 0.0) out.push_back({"non-positive bounds", {}});
  if (level.birds.empty()) out.push_back({"no birds", {}});
  if (level.pig_count() == 0) out.push_back({"no pigs", {}});

  std::set<int> seen;
  std::set<int> reported;
  for (const Block& b : level.blocks) {
    if (!seen.insert(b.id).second && reported.insert(b.id).second)
      out.push_back({"duplicate id: " + std::to_string(b.id), {b.id}});
  }
  for (const Block& b : level.blocks) {
    if (!(b.width > 0.0) || !(b.height > 0.0)) {
      out.push_back({"non-positive size: id " + std::to_string(b.id), {b.id}});
      continue;
    }
    if (b.left() < -kBoundsSlack || b.bottom() < -kBoundsSlack ||
        b.right() > level.width + kBoundsSlack || b.top() > level.height + kBoundsSlack)
      out.push_back({"out of bounds: id " + std::to_string(b.id), {b.id}});
  }

  std::vector<const Block*> sorted;
  for (const Block& b : level.blocks)
    if (!b.is_ground() && b.width > 0.0 && b.height > 0.0) sorted.push_back(&b);
  std::sort(sorted.begin(), sorted.end(),
            [](const Block* a, const Block* b) { return a->id < b->id; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const Block& a = *sorted[i];
      const Block& b = *sorted[j];
      const double ox = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
      const double oy = std::min(a.top(), b.top()) - std::max(a.bottom(), b.bottom());
      if (ox > 0.0 && oy > 0.0 && std::min(ox, oy) > k)
        out.push_back({"interpenetration: ids " + std::to_string(a.id) + "," + std::to_string(b.id),
                       {a.id, b.id}});
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> validate(const Level& level, double k) {
  std::vector<std::string> out;
  for (auto& v : find_violations(level, k)) out.push_back(std::move(v.message));
  return out;
}

Level read_level(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const LineCol lc = locate(text, e.byte);
    throw ParseError("syntax error", lc.line, lc.column);
  }
  if (!doc.is_object()) throw ParseError("level must be a JSON object", 1, 1);

  static const std::set<std::string> kKeys = {"sling", "birds", "bounds", "blocks"};
  for (const auto& [key, _] : doc.items())
    if (!kKeys.count(key)) throw ParseError("unknown field '" + key + "'", 0, 0);

  Level level;
  const auto [sx, sy] = pair_field(doc, "sling");
  level.sling = {sx, sy};
  const auto [w, h] = pair_field(doc, "bounds");
  level.width = w;
  level.height = h;

  if (!doc.contains("birds") || !doc["birds"].is_array())
    throw ParseError("field 'birds' must be an array", 0, 0);
  for (const auto& b : doc["birds"]) {
    if (!b.is_string()) throw ParseError("bird entries must be strings", 0, 0);
    auto kind = parse_bird(b.get<std::string>());
    if (!kind) throw ParseError("unknown bird '" + b.get<std::string>() + "'", 0, 0);
    level.birds.push_back(*kind);
  }

  if (!doc.contains("blocks") || !doc["blocks"].is_array())
    throw ParseError("field 'blocks' must be an array", 0, 0);
  std::size_t index = 0;
  for (const auto& jb : doc["blocks"]) {
    const std::string where = "blocks[" + std::to_string(index++) + "]";
    if (!jb.is_object()) throw ParseError(where + ": must be an object", 0, 0);
    static const std::set<std::string> kBlockKeys = {"id", "material", "x", "y", "w", "h"};
    for (const auto& [key, _] : jb.items())
      if (!kBlockKeys.count(key)) throw ParseError(where + ": unknown field '" + key + "'", 0, 0);
    Block b;
    if (!jb.contains("id") || !jb["id"].is_number_integer())
      throw ParseError(where + ": field 'id' must be an integer", 0, 0);
    b.id = jb["id"].get<int>();
    if (!jb.contains("material") || !jb["material"].is_string())
      throw ParseError(where + ": field 'material' must be a string", 0, 0);
    auto mat = parse_material(jb["material"].get<std::string>());
    if (!mat) throw ParseError(where + ": unknown material '" + jb["material"].get<std::string>() + "'", 0, 0);
    b.material = *mat;
    b.x = number_field(jb, "x", where);
    b.y = number_field(jb, "y", where);
    b.width = number_field(jb, "w", where);
    b.height = number_field(jb, "h", where);
    level.blocks.push_back(b);
  }
  std::stable_sort(level.blocks.begin(), level.blocks.end(),
                   [](const Block& a, const Block& b) { return a.id < b.id; });
  return level;
}

Level parse_level(std::string_view text, double k) {
  Level level = read_level(text);
  auto violations = find_violations(level, k);
  if (!violations.empty())
    throw InvariantError("invalid level: " + violations.front().message,
                         std::move(violations.front().ids));
  return level;
}

std::string serialize_level(const Level& level) {
  std::vector<const Block*> sorted;
  for (const Block& b : level.blocks) sorted.push_back(&b);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Block* a, const Block* b) { return a->id < b->id; });

  std::string out = "{\n";
  out += "  \"sling\": [" + format_number(level.sling.x) + ", " + format_number(level.sling.y) + "],\n";
  out += "  \"birds\": [";
  for (std::size_t i = 0; i < level.birds.size(); ++i) {
    if (i) out += ", ";
    out += "\"";
    out += to_string(level.birds[i]);
    out += "\"";
  }
  out += "],\n";
  out += "  \"bounds\": [" + format_number(level.width) + ", " + format_number(level.height) + "],\n";
  out += "  \"blocks\": [";
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Block& b = *sorted[i];
    out += i ? ",\n    " : "\n    ";
    out += "{\"id\": " + std::to_string(b.id) + ", \"material\": \"";
    out += to_string(b.material);
    out += "\", \"x\": " + format_number(b.x) + ", \"y\": " + format_number(b.y) +
           ", \"w\": " + format_number(b.width) + ", \"h\": " + format_number(b.height) + "}";
  }
  out += sorted.empty() ? "]\n" : "\n  ]\n";
  out += "}\n";
  return out;
}

Level load_level_file(const std::string& path, double k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LevelError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_level(buf.str(), k);
}

LevelState::LevelState(Level level) : LevelState(std::make_shared<const Level>(std::move(level))) {}

LevelState::LevelState(std::shared_ptr<const Level> level)
    : initial_(std::move(level)), current_(*initial_) {}

std::optional<BirdKind> LevelState::next_bird() const {
  if (current_.birds.empty()) return std::nullopt;
  return current_.birds.front();
}

void LevelState::set_blocks(std::vector<Block> blocks) {
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.id < b.id; });
  current_.blocks = std::move(blocks);
}

void LevelState::consume_bird() {
  if (current_.birds.empty()) throw LevelError("no birds remaining");
  current_.birds.erase(current_.birds.begin());
}

std::string serialize_state(const LevelState& state) { return serialize_level(state.current()); }

}  // namespace rr
