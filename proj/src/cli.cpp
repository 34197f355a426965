#include "restart_reasoner/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "restart_reasoner/config.hpp"
#include "restart_reasoner/generator.hpp"
#include "restart_reasoner/harness.hpp"
#include "restart_reasoner/heuristics.hpp"
#include "restart_reasoner/level.hpp"
#include "restart_reasoner/report.hpp"

namespace fs = std::filesystem;

namespace rr {

namespace {

// Data problems (bad files, bad config) map to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path.string());
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Common {
  std::string config;
  std::vector<std::string> overrides;

  GlobalConfig load() const {
    const std::optional<std::string> path = config.empty() ? config_path_from_env() : std::optional(config);
    return GlobalConfig::load(path, overrides);
  }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "JSON config file (default: $RESTART_REASONER_CONFIG)");
  cmd->add_option("--set", c.overrides, "Override one config value, e.g. propagation.c=0.5")
      ->take_all()
      ->allow_extra_args(false);
}

int cmd_validate(const std::string& file, const Common& common, std::ostream& out) {
  const GlobalConfig cfg = common.load();
  const Level level = read_level(read_file(file));
  const auto problems = validate(level, cfg.propagation.k);
  for (const auto& p : problems) out << p << "\n";
  return problems.empty() ? 0 : 1;
}

int cmd_solvable(const std::string& file, const Common& common, std::ostream& out) {
  const GlobalConfig cfg = common.load();
  const Level level = parse_level(read_file(file), cfg.propagation.k);
  const SolvabilityVerdict v = solvable_one_shot(level, cfg.propagation, cfg.trajectory);
  if (v.solvable) {
    const Shot& s = v.witness->shot;
    out << "solvable\n";
    out << "witness: block " << s.target_block << " " << to_string(s.target_point) << " " << to_string(s.arc)
        << " angle " << fixed(s.angle, 6) << "\n";
    return 0;
  }
  out << "unsolvable\npigs_unkillable:";
  for (int id : v.pigs_unkillable) out << " " << id;
  out << "\n";
  return 1;
}

int cmd_analyze(const std::string& file, const Common& common, std::ostream& out) {
  const GlobalConfig cfg = common.load();
  const Level level = parse_level(read_file(file), cfg.propagation.k);
  const ContactGraph graph(level, cfg.propagation.k);
  out << "blocks " << level.non_ground_count() << ", pigs " << level.pig_count() << ", birds "
      << level.birds.size() << "\n";
  out << "contacts " << graph.edge_count() << "\n";
  for (const auto& [id, contacts] : graph.adjacency())
    for (const Contact& c : contacts)
      if (id < c.other)
        out << "  " << id << " " << to_string(c.placement) << " " << c.other << (c.face ? "" : " (corner)")
            << "\n";

  const auto reachable = reachable_blocks(level, cfg.trajectory);
  out << "reachable " << reachable.size() << "\n";
  for (const auto& [id, shots] : reachable) {
    out << "  " << id;
    for (const Shot& s : shots) out << " " << to_string(s.target_point) << "/" << to_string(s.arc);
    out << "\n";
  }

  const PropagationMatrix m = propagation_matrix(level, cfg.propagation);
  out << "propagation (row = impacted block, f0 = 1)\n";
  out << "      ";
  for (int id : m.ids) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%6d", id);
    out << buf;
  }
  out << "\n";
  for (std::size_t r = 0; r < m.ids.size(); ++r) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%6d", m.ids[r]);
    out << buf;
    for (std::size_t c = 0; c < m.ids.size(); ++c) {
      std::snprintf(buf, sizeof buf, "%6.2f", m.at(r, c));
      out << buf;
    }
    out << "\n";
  }
  const SolvabilityVerdict v = solvable_one_shot(level, cfg.propagation, cfg.trajectory);
  out << (v.solvable ? "solvable" : "unsolvable") << "\n";
  return 0;
}

std::vector<Style> parse_styles(const std::vector<std::string>& names) {
  std::vector<Style> out;
  for (const auto& n : names) {
    auto s = parse_style(n);
    if (!s) throw UsageError("unknown style: " + n);
    out.push_back(*s);
  }
  return out;
}

int cmd_generate(std::uint64_t seed, int count, const std::vector<std::string>& styles, const std::string& dir,
                 const Common& common, std::ostream& out) {
  const GlobalConfig cfg = common.load();
  GeneratorParams params;
  params.count = count;
  if (!styles.empty()) params.styles = parse_styles(styles);
  const auto corpus = generate_corpus(params, seed, cfg.oracle, cfg.trajectory);
  fs::create_directories(dir);
  std::string manifest = "id,styles,oracle_solvable\n";
  for (const GeneratedLevel& g : corpus) {
    write_file(fs::path(dir) / (g.id + ".json"), serialize_level(g.level));
    std::string s;
    for (Style st : g.styles) s += (s.empty() ? "" : "+") + std::string(to_string(st));
    manifest += g.id + "," + s + "," + (g.oracle_solvable ? "true" : "false") + "\n";
  }
  write_file(fs::path(dir) / "manifest.csv", manifest);
  out << "wrote " << corpus.size() << " levels to " << dir << "\n";
  return 0;
}

std::vector<NamedLevel> load_corpus(const std::string& spec, const GlobalConfig& cfg) {
  std::vector<NamedLevel> corpus;
  if (spec.rfind("gen:", 0) == 0) {
    const std::string rest = spec.substr(4);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw UsageError("corpus must look like gen:<seed>,<count>");
    std::uint64_t seed = 0;
    int count = 0;
    try {
      std::size_t used = 0;
      seed = std::stoull(rest.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument(rest);
      count = std::stoi(rest.substr(comma + 1), &used);
      if (used != rest.size() - comma - 1) throw std::invalid_argument(rest);
    } catch (const std::logic_error&) {
      throw UsageError("corpus must look like gen:<seed>,<count>");
    }
    GeneratorParams params;
    params.count = count;
    for (GeneratedLevel& g : generate_corpus(params, seed, cfg.oracle, cfg.trajectory))
      corpus.push_back({g.id, std::make_shared<const Level>(std::move(g.level))});
    return corpus;
  }
  if (!fs::is_directory(spec)) throw UsageError("corpus directory not found: " + spec);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(spec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    try {
      corpus.push_back({f.stem().string(), std::make_shared<const Level>(
                                               parse_level(read_file(f.string()), cfg.propagation.k))});
    } catch (const LevelError& e) {
      throw UsageError(f.string() + ": " + e.what());
    }
  }
  return corpus;
}

struct EvaluateArgs {
  std::string corpus;
  std::string policy = "naive";
  std::optional<int> trials;
  std::string out;
  std::optional<std::string> predictor;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  bool scores = true;
};

int cmd_evaluate(const EvaluateArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  GlobalConfig cfg = common.load();
  if (a.trials) {
    if (*a.trials < 1) throw UsageError("--trials must be >= 1");
    cfg.harness.trials = *a.trials;
  }
  if (a.seed) cfg.harness.seed = *a.seed;
  if (a.predictor) {
    auto p = parse_predictor(*a.predictor);
    if (!p) throw UsageError("--predictor must be heuristic or oracle");
    cfg.harness.predictor = *p;
  }
  const auto policy = parse_policy(a.policy);
  if (!policy) throw UsageError("--policy must be naive or greedy");
  if (a.jobs < 1) throw UsageError("--jobs must be >= 1");
  for (const auto& w : cfg.warnings()) err << "warning: " << w << "\n";

  const auto corpus = load_corpus(a.corpus, cfg);
  if (corpus.empty()) throw UsageError("empty corpus: " + a.corpus);
  const EvaluationReport report = evaluate(corpus, *policy, cfg, a.jobs);
  if (report.rows.empty()) throw UsageError("every level in the corpus is degenerate");

  fs::create_directories(a.out);
  const fs::path dir(a.out);
  write_file(dir / "report.csv", report_csv(report));
  write_file(dir / "report.md", report_markdown(report));
  write_file(dir / "trials.jsonl", audit_jsonl(report.records));
  if (a.scores) write_file(dir / "scores.csv", scores_csv(report));
  write_file(dir / "config.json", cfg.to_json());
  out << rows_markdown(report.rows, report.average);
  return 0;
}

int cmd_report(const std::string& file, const std::string& format, std::ostream& out) {
  ParsedReport parsed;
  try {
    parsed = parse_report_csv(read_file(file));
  } catch (const UsageError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw UsageError(file + ": " + e.what());
  }
  if (parsed.rows.empty()) throw UsageError(file + ": no level rows");
  // The average is always recomputed so a hand-edited CSV stays consistent.
  const LevelRow avg = aggregate(parsed.rows);
  out << (format == "csv" ? rows_csv(parsed.rows, avg) : rows_markdown(parsed.rows, avg));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qualitative solvability prediction and restart evaluation", "restart-reasoner"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  Common common;
  std::string file;

  auto* validate_cmd = app.add_subcommand("validate", "Check a level file; prints one violation per line");
  validate_cmd->add_option("level", file, "Level file")->required();
  add_common(validate_cmd, common);

  auto* solvable_cmd = app.add_subcommand("solvable", "One-shot solvability verdict");
  solvable_cmd->alias("predict");
  solvable_cmd->add_option("level", file, "Level file")->required();
  add_common(solvable_cmd, common);

  auto* analyze_cmd = app.add_subcommand("analyze", "Contacts, reachable blocks and propagation matrix");
  analyze_cmd->add_option("level", file, "Level file")->required();
  add_common(analyze_cmd, common);

  std::uint64_t gen_seed = 1;
  int gen_count = 20;
  std::vector<std::string> gen_styles;
  std::string gen_out;
  auto* generate_cmd = app.add_subcommand("generate", "Write a procedural level corpus");
  generate_cmd->add_option("--seed", gen_seed, "Corpus seed");
  generate_cmd->add_option("--count", gen_count, "Number of levels")->check(CLI::NonNegativeNumber);
  generate_cmd->add_option("--style", gen_styles, "Restrict to styles: exposed, row, tower, under-shelf, sealed-vault");
  generate_cmd->add_option("--out", gen_out, "Output directory")->required();
  add_common(generate_cmd, common);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run paired restart trials and write reports");
  evaluate_cmd->add_option("--corpus", ev.corpus, "Directory of level files, or gen:<seed>,<count>")->required();
  evaluate_cmd->add_option("--policy", ev.policy, "naive or greedy");
  evaluate_cmd->add_option("--trials", ev.trials, "Trials per level (overrides harness.trials)");
  evaluate_cmd->add_option("--out", ev.out, "Output directory")->required();
  evaluate_cmd->add_option("--predictor", ev.predictor, "heuristic (default) or oracle");
  evaluate_cmd->add_option("--seed", ev.seed, "Base trial seed (overrides harness.seed)");
  evaluate_cmd->add_option("--jobs", ev.jobs, "Worker threads; output does not depend on it");
  evaluate_cmd->add_flag("!--no-scores", ev.scores, "Skip scores.csv");
  add_common(evaluate_cmd, common);

  std::string report_format = "md";
  auto* report_cmd = app.add_subcommand("report", "Render a report.csv as a Markdown table");
  report_cmd->add_option("report", file, "report.csv written by evaluate")->required();
  report_cmd->add_option("--format", report_format, "md or csv")->check(CLI::IsMember({"md", "csv"}));

  std::vector<std::string> argv_store{"restart-reasoner"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(file, common, out);
    if (*solvable_cmd) return cmd_solvable(file, common, out);
    if (*analyze_cmd) return cmd_analyze(file, common, out);
    if (*generate_cmd) return cmd_generate(gen_seed, gen_count, gen_styles, gen_out, common, out);
    if (*evaluate_cmd) return cmd_evaluate(ev, common, out, err);
    if (*report_cmd) return cmd_report(file, report_format, out);
  } catch (const ParseError& e) {
    err << "error: " << file << ": " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    err << "error: " << file << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace rr
