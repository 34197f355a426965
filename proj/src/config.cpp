#include "restart_reasoner/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rr {

using nlohmann::json;

std::string_view to_string(PredictorKind k) { return k == PredictorKind::oracle ? "oracle" : "heuristic"; }

std::optional<PredictorKind> parse_predictor(std::string_view s) {
  if (s == "heuristic") return PredictorKind::heuristic;
  if (s == "oracle") return PredictorKind::oracle;
  return std::nullopt;
}

std::vector<std::string> HarnessParams::violations() const {
  std::vector<std::string> out;
  if (trials < 1) out.push_back("harness.trials must be >= 1");
  if (restart_cap < 0) out.push_back("harness.restart_cap must be >= 0");
  return out;
}

namespace {

constexpr Material kKillable[] = {Material::wood, Material::ice, Material::stone, Material::pig};

json kill_json(const KillThresholds& kill) {
  json j = json::object();
  for (Material m : kKillable) j[std::string(to_string(m))] = kill[m];
  return j;
}

json to_tree(const GlobalConfig& c) {
  const PropagationConstants& p = c.propagation;
  json j;
  j["propagation"] = {{"c", p.c},         {"c1", p.c1},       {"c_l", p.c_l},
                      {"k", p.k},         {"s1", p.s1},       {"d_max", p.d_max},
                      {"h_max", p.h_max}, {"f_floor", p.f_floor}, {"kill", kill_json(p.kill)},
                      {"thrown_law", std::string(to_string(p.thrown_law))}};
  const TrajectoryParams& t = c.trajectory;
  j["trajectory"] = {{"gravity", t.gravity},
                     {"speed", t.speed},
                     {"range_factor", t.range_factor},
                     {"step", t.step},
                     {"eps_hit", t.eps_hit}};
  const RestartConfig& r = c.restart;
  json thresholds = json::object(), effectiveness = json::object();
  for (BirdKind b : kAllBirds) {
    const std::string name(to_string(b));
    if (auto it = r.thresholds.find(b); it != r.thresholds.end()) thresholds[name] = it->second;
    json mats = json::array();
    if (auto it = r.effectiveness.find(b); it != r.effectiveness.end())
      for (Material m : it->second) mats.push_back(std::string(to_string(m)));
    effectiveness[name] = mats;
  }
  j["restart"] = {{"thresholds", thresholds},
                  {"weights", r.weights},
                  {"restart_threshold", r.restart_threshold},
                  {"effectiveness", effectiveness},
                  {"delta_move", r.delta_move}};
  const OracleConstants& o = c.oracle;
  j["oracle"] = {{"c", o.physics.c},
                 {"c1", o.physics.c1},
                 {"c_l", o.physics.c_l},
                 {"f_floor", o.physics.f_floor},
                 {"kill", kill_json(o.physics.kill)},
                 {"scoring", {{"pig", o.scoring.pig}, {"block", o.scoring.block}, {"unused_bird", o.scoring.unused_bird}}},
                 {"t_shot", o.t_shot},
                 {"t_restart", o.t_restart}};
  const HarnessParams& h = c.harness;
  j["harness"] = {{"trials", h.trials},
                  {"restart_cap", h.restart_cap},
                  {"seed", h.seed},
                  {"finish_aware", h.finish_aware},
                  {"predictor", std::string(to_string(h.predictor))}};
  return j;
}

// Overlays `src` onto `dst`, rejecting keys the template does not know.
// Objects merge key by key; anything else replaces the old value.
void merge_checked(json& dst, const json& src, const json& tmpl, const std::string& path) {
  if (!src.is_object()) throw ConfigError(path.empty() ? "config must be a JSON object" : path + " must be an object");
  for (auto it = src.begin(); it != src.end(); ++it) {
    const std::string key_path = path.empty() ? it.key() : path + "." + it.key();
    if (!tmpl.contains(it.key())) throw ConfigError("unknown config key: " + key_path);
    const json& t = tmpl[it.key()];
    if (t.is_object()) {
      if (!dst.contains(it.key())) dst[it.key()] = json::object();
      merge_checked(dst[it.key()], it.value(), t, key_path);
    } else {
      dst[it.key()] = it.value();
    }
  }
}

// Reads user-supplied values, falling back to defaults.
class Reader {
 public:
  explicit Reader(const json& user) : user_(user) {}

  const json* find(const std::string& path) const {
    const json* cur = &user_;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!cur->is_object() || !cur->contains(key)) return nullptr;
      cur = &(*cur)[key];
      if (dot == std::string::npos) return cur;
      start = dot + 1;
    }
  }

  double number(const std::string& path, double fallback) const {
    const json* v = find(path);
    if (!v) return fallback;
    if (!v->is_number()) throw ConfigError(path + " must be a number");
    return v->get<double>();
  }

  long long integer(const std::string& path, long long fallback) const {
    const json* v = find(path);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ConfigError(path + " must be an integer");
    return v->get<long long>();
  }

  std::uint64_t unsigned_integer(const std::string& path, std::uint64_t fallback) const {
    const json* v = find(path);
    if (!v) return fallback;
    if (!v->is_number_unsigned()) throw ConfigError(path + " must be a non-negative integer");
    return v->get<std::uint64_t>();
  }

  bool boolean(const std::string& path, bool fallback) const {
    const json* v = find(path);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ConfigError(path + " must be true or false");
    return v->get<bool>();
  }

  std::optional<std::string> string(const std::string& path) const {
    const json* v = find(path);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ConfigError(path + " must be a string");
    return v->get<std::string>();
  }

  void kill(const std::string& path, KillThresholds& kill) const {
    for (Material m : kKillable) kill.set(m, number(path + "." + std::string(to_string(m)), kill[m]));
  }

 private:
  const json& user_;
};

GlobalConfig decode(const json& user) {
  const Reader r(user);
  GlobalConfig c;

  PropagationConstants& p = c.propagation;
  p.c = r.number("propagation.c", p.c);
  p.c1 = r.number("propagation.c1", p.c1);
  p.c_l = r.number("propagation.c_l", p.c_l);
  p.k = r.number("propagation.k", p.k);
  p.s1 = r.number("propagation.s1", p.s1);
  p.d_max = r.number("propagation.d_max", p.d_max);
  p.h_max = r.number("propagation.h_max", p.h_max);
  p.f_floor = r.number("propagation.f_floor", p.f_floor);
  r.kill("propagation.kill", p.kill);
  if (auto law = r.string("propagation.thrown_law")) {
    if (*law == "exponential")
      p.thrown_law = ThrownForceLaw::exponential;
    else if (*law == "literal")
      p.thrown_law = ThrownForceLaw::literal;
    else
      throw ConfigError("propagation.thrown_law must be exponential or literal");
  }

  TrajectoryParams& t = c.trajectory;
  t.gravity = r.number("trajectory.gravity", t.gravity);
  t.speed = r.number("trajectory.speed", t.speed);
  t.range_factor = r.number("trajectory.range_factor", t.range_factor);
  t.step = r.number("trajectory.step", t.step);
  t.eps_hit = r.number("trajectory.eps_hit", t.eps_hit);

  RestartConfig& rc = c.restart;
  for (BirdKind b : kAllBirds) {
    const std::string name(to_string(b));
    rc.thresholds[b] = r.number("restart.thresholds." + name, rc.thresholds[b]);
    if (const json* mats = r.find("restart.effectiveness." + name)) {
      if (!mats->is_array()) throw ConfigError("restart.effectiveness." + name + " must be a list");
      std::set<Material> set;
      for (const json& m : *mats) {
        const auto parsed = m.is_string() ? parse_material(m.get<std::string>()) : std::nullopt;
        if (!parsed || *parsed == Material::ground || *parsed == Material::pig)
          throw ConfigError("restart.effectiveness." + name + " lists an unknown block material");
        set.insert(*parsed);
      }
      rc.effectiveness[b] = set;
    }
  }
  if (const json* w = r.find("restart.weights")) {
    if (!w->is_array() || w->size() != 4) throw ConfigError("restart.weights must be a list of 4 numbers");
    for (std::size_t i = 0; i < 4; ++i) {
      if (!(*w)[i].is_number()) throw ConfigError("restart.weights must be a list of 4 numbers");
      rc.weights[i] = (*w)[i].get<double>();
    }
  }
  rc.restart_threshold = r.number("restart.restart_threshold", rc.restart_threshold);
  rc.delta_move = r.number("restart.delta_move", rc.delta_move);

  // Oracle loss factors default to the attenuated heuristic constants.
  OracleConstants& o = c.oracle;
  o = OracleConstants::attenuated(p);
  o.physics.c = r.number("oracle.c", o.physics.c);
  o.physics.c1 = r.number("oracle.c1", o.physics.c1);
  o.physics.c_l = r.number("oracle.c_l", o.physics.c_l);
  o.physics.f_floor = r.number("oracle.f_floor", o.physics.f_floor);
  r.kill("oracle.kill", o.physics.kill);
  o.scoring.pig = r.number("oracle.scoring.pig", o.scoring.pig);
  o.scoring.block = r.number("oracle.scoring.block", o.scoring.block);
  o.scoring.unused_bird = r.number("oracle.scoring.unused_bird", o.scoring.unused_bird);
  o.t_shot = r.number("oracle.t_shot", o.t_shot);
  o.t_restart = r.number("oracle.t_restart", o.t_restart);

  HarnessParams& h = c.harness;
  const long long trials = r.integer("harness.trials", h.trials);
  const long long cap = r.integer("harness.restart_cap", h.restart_cap);
  if (trials > 1'000'000 || cap > 1'000'000) throw ConfigError("harness counts are unreasonably large");
  h.trials = static_cast<int>(trials);
  h.restart_cap = static_cast<int>(cap);
  h.seed = r.unsigned_integer("harness.seed", h.seed);
  h.finish_aware = r.boolean("harness.finish_aware", h.finish_aware);
  if (auto pred = r.string("harness.predictor")) {
    auto parsed = parse_predictor(*pred);
    if (!parsed) throw ConfigError("harness.predictor must be heuristic or oracle");
    h.predictor = *parsed;
  }
  return c;
}

json parse_override(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like section.key=value: " + spec);
  const std::string path = spec.substr(0, eq);
  const std::string text = spec.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json root = json::object();
  json* cur = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("override has an empty key: " + spec);
    if (dot == std::string::npos) {
      (*cur)[key] = value;
      break;
    }
    cur = &(*cur)[key];
    start = dot + 1;
  }
  return root;
}

}  // namespace

GlobalConfig GlobalConfig::parse(const std::string& text, const std::vector<std::string>& overrides) {
  const json tmpl = to_tree(GlobalConfig{});
  json user = json::object();
  if (!text.empty()) {
    json file;
    try {
      file = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    merge_checked(user, file, tmpl, "");
  }
  for (const std::string& o : overrides) merge_checked(user, parse_override(o), tmpl, "");

  GlobalConfig c = decode(user);
  if (auto v = c.violations(); !v.empty()) {
    std::string msg = "invalid config:";
    for (const auto& s : v) msg += " " + s + ";";
    throw ConfigError(msg);
  }
  return c;
}

GlobalConfig GlobalConfig::load(const std::optional<std::string>& path, const std::vector<std::string>& overrides) {
  std::string text;
  if (path) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + *path);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse(text, overrides);
}

std::string GlobalConfig::to_json() const { return to_tree(*this).dump(2) + "\n"; }

std::vector<std::string> GlobalConfig::violations() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& prefix, const std::vector<std::string>& v) {
    for (const auto& s : v) out.push_back(prefix + s);
  };
  add("propagation: ", propagation.violations());
  add("trajectory: ", trajectory.violations());
  add("restart: ", restart.violations());
  add("oracle: ", oracle.violations());
  add("oracle: ", oracle.dominance_violations(propagation));
  add("", harness.violations());
  return out;
}

std::vector<std::string> GlobalConfig::warnings() const { return restart.warnings(); }

std::optional<std::string> config_path_from_env() {
  const char* v = std::getenv("RESTART_REASONER_CONFIG");
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

}  // namespace rr
