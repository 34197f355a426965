#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "restart_reasoner/cli.hpp"
#include "restart_reasoner/config.hpp"
#include "restart_reasoner/generator.hpp"
#include "restart_reasoner/harness.hpp"
#include "restart_reasoner/heuristics.hpp"
#include "restart_reasoner/level.hpp"
#include "restart_reasoner/propagation.hpp"
#include "restart_reasoner/trajectory.hpp"

namespace py = pybind11;
using namespace rr;

namespace {

GlobalConfig config_from(const std::string& text, const std::vector<std::string>& overrides) {
  return GlobalConfig::parse(text.empty() ? "{}" : text, overrides);
}

py::dict solvable_py(const std::string& level_text, const std::string& config_text,
                     const std::vector<std::string>& overrides) {
  const GlobalConfig cfg = config_from(config_text, overrides);
  const Level level = parse_level(level_text, cfg.propagation.k);
  const SolvabilityVerdict v = solvable_one_shot(level, cfg.propagation, cfg.trajectory);
  py::dict out;
  out["solvable"] = v.solvable;
  out["pigs_unkillable"] = v.pigs_unkillable;
  if (v.witness) {
    py::dict w;
    w["block"] = v.witness->shot.target_block;
    w["point"] = std::string(to_string(v.witness->shot.target_point));
    w["arc"] = std::string(to_string(v.witness->shot.arc));
    w["angle"] = v.witness->shot.angle;
    out["witness"] = w;
  } else {
    out["witness"] = py::none();
  }
  return out;
}

py::dict propagate_py(const std::string& level_text, int block, double f0, const std::string& config_text,
                      const std::vector<std::string>& overrides) {
  const GlobalConfig cfg = config_from(config_text, overrides);
  const ForceMap fm = propagate(parse_level(level_text, cfg.propagation.k), block, f0, cfg.propagation);
  py::dict out;
  out["forces"] = fm.forces;
  out["destroyed"] = fm.destroyed;
  return out;
}

py::tuple run_cli_py(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

py::dict aggregate_py(const std::vector<py::dict>& rows) {
  std::vector<LevelRow> in;
  for (const py::dict& d : rows) {
    LevelRow r;
    r.level = d.contains("level") ? d["level"].cast<std::string>() : "";
    r.tp = d["TP"].cast<double>();
    r.tn = d["TN"].cast<double>();
    r.fp = d["FP"].cast<double>();
    r.fn = d["FN"].cast<double>();
    if (d.contains("TR") && !d["TR"].is_none()) r.tr = d["TR"].cast<double>();
    r.n = d.contains("n") ? d["n"].cast<int>() : 0;
    in.push_back(r);
  }
  const LevelRow avg = aggregate(in);
  py::dict out;
  out["level"] = avg.level;
  out["TP"] = avg.tp;
  out["TN"] = avg.tn;
  out["FP"] = avg.fp;
  out["FN"] = avg.fn;
  out["TR"] = avg.tr ? py::cast(*avg.tr) : py::none();
  out["n"] = avg.n;
  return out;
}

std::vector<std::string> generate_py(std::uint64_t seed, int count) {
  GeneratorParams params;
  params.count = count;
  std::vector<std::string> out;
  for (const GeneratedLevel& g : generate_corpus(params, seed, OracleConstants::attenuated({}), {}))
    out.push_back(serialize_level(g.level));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "One-shot solvability and restart heuristics for physics-puzzle agents.";

  py::register_exception<LevelError>(m, "LevelError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("validate", [](const std::string& text) { return validate(read_level(text)); }, py::arg("level"),
        "Invariant violations of a level given as JSON text; empty when valid.");
  m.def("serialize_level", [](const std::string& text) { return serialize_level(parse_level(text)); },
        py::arg("level"));
  m.def("solvable", &solvable_py, py::arg("level"), py::arg("config") = "",
        py::arg("overrides") = std::vector<std::string>{});
  m.def("propagate", &propagate_py, py::arg("level"), py::arg("block"), py::arg("f0") = 1.0,
        py::arg("config") = "", py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "direct_force",
      [](double f1, int n, double c) {
        PropagationConstants p;
        p.c = c;
        return direct_force(f1, n, p);
      },
      py::arg("f1"), py::arg("n"), py::arg("c") = 1.0);
  m.def(
      "falling_force",
      [](double f1, double d, double h, double c1) {
        PropagationConstants p;
        p.c1 = c1;
        return falling_force(f1, d, h, p);
      },
      py::arg("f1"), py::arg("d"), py::arg("h"), py::arg("c1") = 1.0);
  m.def("score_h", &score_h, py::arg("score_delta"), py::arg("threshold"));
  m.def(
      "restart_score",
      [](std::array<double, 4> terms, std::array<double, 4> weights) {
        return restart_score({terms[0], terms[1], terms[2], terms[3]}, weights);
      },
      py::arg("terms"), py::arg("weights") = std::array<double, 4>{0.2, 0.2, 0.2, 0.4});
  m.def(
      "launch_angles",
      [](std::pair<double, double> target, double speed, double gravity, std::pair<double, double> origin) {
        return launch_angles({target.first, target.second}, speed, gravity, {origin.first, origin.second});
      },
      py::arg("target"), py::arg("speed"), py::arg("gravity") = 9.81,
      py::arg("origin") = std::pair<double, double>{0.0, 0.0});
  m.def(
      "time_ratio",
      [](std::vector<double> without, std::vector<double> with, bool signalled) {
        return time_ratio(without, with, signalled);
      },
      py::arg("without"), py::arg("with_restarts"), py::arg("restart_signalled") = true);
  m.def("aggregate", &aggregate_py, py::arg("rows"));
  m.def("generate", &generate_py, py::arg("seed"), py::arg("count"));
  m.def("run_cli", &run_cli_py, py::arg("args"),
        "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
