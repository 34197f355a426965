#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rr {

/// Default slack used when deciding whether two rectangles touch (world units).
inline constexpr double kDefaultContactTolerance = 0.05;

enum class Material { wood, ice, stone, pig, ground };
enum class BirdKind { red, blue, yellow, black, white };

inline constexpr Material kAllMaterials[] = {Material::wood, Material::ice, Material::stone,
                                             Material::pig, Material::ground};
inline constexpr BirdKind kAllBirds[] = {BirdKind::red, BirdKind::blue, BirdKind::yellow,
                                         BirdKind::black, BirdKind::white};

std::string_view to_string(Material m);
std::string_view to_string(BirdKind b);
std::optional<Material> parse_material(std::string_view s);
std::optional<BirdKind> parse_bird(std::string_view s);

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// Axis-aligned rectangle with a material. (x, y) is the bottom-left corner;
/// y grows upward and birds fly toward +x.
struct Block {
  int id = 0;
  Material material = Material::wood;
  double x = 0.0;
  double y = 0.0;
  double width = 1.0;
  double height = 1.0;

  double left() const { return x; }
  double right() const { return x + width; }
  double bottom() const { return y; }
  double top() const { return y + height; }
  double area() const { return width * height; }
  Point top_center() const { return {x + 0.5 * width, y + height}; }
  Point left_center() const { return {x, y + 0.5 * height}; }
  bool is_ground() const { return material == Material::ground; }
  bool is_pig() const { return material == Material::pig; }
  bool contains(Point p) const { return p.x >= x && p.x <= right() && p.y >= y && p.y <= top(); }

  friend bool operator==(const Block&, const Block&) = default;
};

struct Level {
  Point sling;
  std::vector<BirdKind> birds;
  double width = 0.0;   // bounds: [0, width] x [0, height]
  double height = 0.0;
  std::vector<Block> blocks;  // kept sorted by id

  const Block* find(int id) const;
  const Block& at(int id) const;
  std::vector<int> pig_ids() const;
  std::size_t pig_count() const;
  std::size_t non_ground_count() const;

  friend bool operator==(const Level&, const Level&) = default;
};

class LevelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed level text. line/column are 1-based; 0 when the problem is
/// structural (wrong field type, missing key) rather than lexical.
class ParseError : public LevelError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed text describing a level that breaks an invariant.
class InvariantError : public LevelError {
 public:
  InvariantError(const std::string& what, std::vector<int> block_ids);
  const std::vector<int>& block_ids() const { return block_ids_; }

 private:
  std::vector<int> block_ids_;
};

/// Violated invariants, one human-readable line each. Empty iff valid.
std::vector<std::string> validate(const Level& level, double k = kDefaultContactTolerance);

/// Reads the JSON level format without checking invariants.
Level read_level(std::string_view text);

/// Reads and validates; throws InvariantError naming the offending ids.
Level parse_level(std::string_view text, double k = kDefaultContactTolerance);

/// Canonical text: fixed key order, blocks sorted by id, numbers rounded to
/// at most six decimals. parse_level(serialize_level(L)) == L for valid L.
std::string serialize_level(const Level& level);

Level load_level_file(const std::string& path, double k = kDefaultContactTolerance);

/// Rounds to the 1e-6 grid used by the canonical format.
double round_micro(double v);

/// Shortest decimal with at most six fractional digits ("3", "0.25", "-1.5").
std::string format_number(double v);

/// The evolving state of one level attempt. The original level is shared and
/// immutable; `current()` holds surviving blocks and the unused bird suffix.
class LevelState {
 public:
  explicit LevelState(Level level);
  explicit LevelState(std::shared_ptr<const Level> level);

  const Level& initial() const { return *initial_; }
  std::shared_ptr<const Level> initial_ptr() const { return initial_; }
  const Level& current() const { return current_; }

  std::size_t birds_remaining() const { return current_.birds.size(); }
  std::size_t birds_used() const { return initial_->birds.size() - current_.birds.size(); }
  std::optional<BirdKind> next_bird() const;
  std::size_t pigs_alive() const { return current_.pig_count(); }
  bool solved() const { return pigs_alive() == 0; }

  double accumulated_score() const { return score_; }
  double elapsed_time() const { return elapsed_; }

  /// Fresh state for the same level, as if it had never been played.
  LevelState restart() const { return LevelState(initial_); }

  /// Mutators used by the shot transition.
  void set_blocks(std::vector<Block> blocks);
  void consume_bird();
  void add_score(double points) { score_ += points; }
  void add_time(double seconds) { elapsed_ += seconds; }

 private:
  std::shared_ptr<const Level> initial_;
  Level current_;
  double score_ = 0.0;
  double elapsed_ = 0.0;
};

std::string serialize_state(const LevelState& state);

}  // namespace rr
