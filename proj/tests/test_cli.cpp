#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "restart_reasoner/cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using rr::test::fixture_path;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = rr::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rr-cli-" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(CliValidate, ExitCodes) {
  const CliResult ok = run({"validate", fixture_path("exposed.json")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "");
  const CliResult none = run({"validate", fixture_path("zero_pigs.json")});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.out, "no pigs\n");
  EXPECT_EQ(run({"validate", fixture_path("malformed.json")}).code, 2);
  EXPECT_EQ(run({"validate", fixture_path("missing.json")}).code, 2);
}

TEST(CliSolvable, Verdicts) {
  const CliResult exposed = run({"solvable", fixture_path("exposed.json")});
  EXPECT_EQ(exposed.code, 0);
  EXPECT_EQ(exposed.out.rfind("solvable\nwitness: block 1 ", 0), 0u);
  const CliResult vault = run({"solvable", fixture_path("vault.json")});
  EXPECT_EQ(vault.code, 1);
  EXPECT_EQ(vault.out, "unsolvable\npigs_unkillable: 2\n");
  EXPECT_EQ(run({"predict", fixture_path("exposed.json")}).code, 0);
  EXPECT_EQ(run({"solvable", fixture_path("zero_pigs.json")}).code, 2);
}

TEST(CliSolvable, ConfigFlipsMarginalLevel) {
  const std::string cfg = fixture_path("marginal_config.json");
  EXPECT_EQ(run({"solvable", fixture_path("marginal.json"), "--config", cfg}).code, 0);
  EXPECT_EQ(run({"solvable", fixture_path("marginal.json"), "--config", cfg, "--set", "propagation.c=0.5"}).code, 1);
  EXPECT_EQ(run({"solvable", fixture_path("marginal.json"), "--set", "propagation.bogus=1"}).code, 2);
}

TEST(CliEvaluate, DeterministicAcrossRunsAndJobs) {
  const fs::path a = scratch("eval-a"), b = scratch("eval-b");
  const std::vector<std::string> base{"evaluate", "--corpus", "gen:42,4", "--policy", "naive", "--trials", "6"};
  auto with = [&](const fs::path& out, const std::string& jobs) {
    auto args = base;
    args.insert(args.end(), {"--out", out.string(), "--jobs", jobs});
    return run(args);
  };
  const CliResult ra = with(a, "1");
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(with(b, "3").code, 0);
  for (const char* f : {"report.csv", "report.md", "trials.jsonl", "scores.csv", "config.json"}) {
    EXPECT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_NE(slurp(a / "report.md").find(ra.out), std::string::npos);

  // Re-rendering the CSV gives the same table evaluate printed.
  const CliResult md = run({"report", (a / "report.csv").string()});
  EXPECT_EQ(md.code, 0);
  EXPECT_EQ(md.out, ra.out);
  const CliResult csv = run({"report", (a / "report.csv").string(), "--format", "csv"});
  EXPECT_EQ(csv.out, slurp(a / "report.csv"));
}

TEST(CliEvaluate, EmptyCorpusIsAnError) {
  const fs::path empty = scratch("empty");
  fs::create_directories(empty);
  EXPECT_EQ(run({"evaluate", "--corpus", empty.string(), "--out", scratch("empty-out").string()}).code, 2);
  EXPECT_EQ(run({"evaluate", "--corpus", "gen:1", "--out", scratch("bad-out").string()}).code, 2);
}

TEST(CliGenerate, WritesCanonicalLevels) {
  const fs::path out = scratch("gen");
  ASSERT_EQ(run({"generate", "--seed", "17", "--count", "18", "--out", out.string()}).code, 0);
  EXPECT_EQ(slurp(out / "gen-17-17.json"), slurp(fixture_path("L17.json")));
  EXPECT_TRUE(fs::exists(out / "manifest.csv"));
  EXPECT_EQ(run({"validate", (out / "gen-17-3.json").string()}).code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solvable"}).code, 2);
}
