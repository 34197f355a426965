#include "restart_reasoner/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rr {

namespace {

// Rounds via the CSV's 1e-6 grid so a table rendered from report.csv matches
// the one rendered from the live report.
std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", round_micro(v));
  return buf;
}

std::string csv_line(const LevelRow& r) {
  std::string s = r.level;
  for (double v : {r.tp, r.tn, r.fp, r.fn}) s += "," + format_number(v);
  s += "," + (r.tr ? format_number(*r.tr) : std::string("N/A"));
  s += "," + std::to_string(r.n) + "\n";
  return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
}

nlohmann::json shots_json(const std::vector<ShotLog>& shots) {
  auto arr = nlohmann::json::array();
  for (const ShotLog& s : shots)
    arr.push_back({s.attempt, s.block, std::string(to_string(s.point)), std::string(to_string(s.arc))});
  return arr;
}

}  // namespace

std::string rows_csv(const std::vector<LevelRow>& rows, const LevelRow& average) {
  std::string out = "level,TP,TN,FP,FN,TR,n\n";
  for (const LevelRow& r : rows) out += csv_line(r);
  LevelRow avg = average;
  avg.level = "Average";
  out += csv_line(avg);
  return out;
}

std::string report_csv(const EvaluationReport& report) { return rows_csv(report.rows, report.average); }

std::string rows_markdown(const std::vector<LevelRow>& rows, const LevelRow& average) {
  std::vector<std::vector<std::string>> table;
  table.push_back({"Level", "TP", "TN", "FP", "FN", "TR", "n"});
  auto add = [&](const LevelRow& r, const std::string& name) {
    table.push_back({name, fixed2(r.tp), fixed2(r.tn), fixed2(r.fp), fixed2(r.fn),
                     r.tr ? fixed2(*r.tr) : "N/A", std::to_string(r.n)});
  };
  for (const LevelRow& r : rows) add(r, r.level);
  add(average, "Average");

  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());

  auto line = [&](const std::vector<std::string>& row) {
    std::string s = "|";
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string pad(width[c] - row[c].size(), ' ');
      s += " " + (c == 0 ? row[c] + pad : pad + row[c]) + " |";
    }
    return s + "\n";
  };
  std::string out = line(table.front());
  out += "|";
  for (std::size_t c = 0; c < width.size(); ++c)
    out += c == 0 ? " " + std::string(width[c], '-') + " |" : " " + std::string(width[c] - 1, '-') + ": |";
  out += "\n";
  for (std::size_t i = 1; i + 1 < table.size(); ++i) out += line(table[i]);
  out += line(table.back());
  return out;
}

std::string report_markdown(const EvaluationReport& report) {
  std::string out = "# Restart evaluation\n\n";
  out += "Trials per level: " + std::to_string(report.trials_per_level) + "\n\n";
  out += rows_markdown(report.rows, report.average);
  if (!report.degenerate_levels.empty()) {
    out += "\nDegenerate levels (nothing reachable, excluded):";
    for (const auto& id : report.degenerate_levels) out += " " + id;
    out += "\n";
  }
  return out;
}

std::string scores_csv(const EvaluationReport& report) {
  std::string out =
      "level,score_without_mean,score_without_sd,score_with_mean,score_with_sd,time_without_mean,"
      "time_with_mean,n\n";
  for (const ScoreRow& r : report.scores) {
    out += r.level;
    for (double v : {r.score_without_mean, r.score_without_sd, r.score_with_mean, r.score_with_sd,
                     r.time_without_mean, r.time_with_mean})
      out += "," + format_number(v);
    out += "," + std::to_string(r.n) + "\n";
  }
  return out;
}

std::string audit_jsonl(const std::vector<TrialRecord>& records) {
  std::string out;
  for (const TrialRecord& r : records) {
    nlohmann::ordered_json j;
    j["level"] = r.level_id;
    j["seed"] = r.seed;
    j["degenerate"] = r.degenerate;
    if (!r.degenerate) {
      j["prediction"] = r.prediction ? nlohmann::ordered_json(std::string(to_string(*r.prediction))) : nullptr;
      j["solved"] = r.solved;
      j["outcome"] = r.prediction ? nlohmann::ordered_json(std::string(to_string(classify(r)))) : nullptr;
      j["final_score"] = r.final_score;
      j["score_with"] = r.score_with;
      j["time_without"] = r.time_without;
      j["time_with"] = r.time_with;
      j["solved_without"] = r.solved_without;
      j["solved_with"] = r.solved_with;
      j["restarts"] = r.restarts;
      j["restart_signals"] = r.restart_signals;
      j["hard_rule_triggers"] = r.hard_rule_triggers;
      j["hard_rule_restarts"] = r.hard_rule_restarts;
      j["first_signal"] = r.first_signal ? nlohmann::ordered_json(*r.first_signal) : nullptr;
      j["shots_without"] = shots_json(r.shots_without);
      j["shots_with"] = shots_json(r.shots_with);
    }
    out += j.dump() + "\n";
  }
  return out;
}

ParsedReport parse_report_csv(std::string_view text) {
  ParsedReport parsed;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (!header) {
      if (cells != std::vector<std::string>{"level", "TP", "TN", "FP", "FN", "TR", "n"})
        throw std::runtime_error("line 1: expected header level,TP,TN,FP,FN,TR,n");
      header = true;
      continue;
    }
    if (cells.size() != 7) throw std::runtime_error("line " + std::to_string(lineno) + ": expected 7 columns");
    LevelRow r;
    r.level = cells[0];
    r.tp = to_double(cells[1], lineno);
    r.tn = to_double(cells[2], lineno);
    r.fp = to_double(cells[3], lineno);
    r.fn = to_double(cells[4], lineno);
    if (cells[5] != "N/A") r.tr = to_double(cells[5], lineno);
    r.n = static_cast<int>(to_double(cells[6], lineno));
    if (r.level == "Average")
      parsed.average = r;
    else
      parsed.rows.push_back(r);
  }
  if (!header) throw std::runtime_error("empty report");
  return parsed;
}

}  // namespace rr
