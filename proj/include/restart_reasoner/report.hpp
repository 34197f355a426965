#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "restart_reasoner/harness.hpp"

namespace rr {

/// level,TP,TN,FP,FN,TR,n with one row per level and a closing Average row.
/// Missing TR prints as N/A.
std::string report_csv(const EvaluationReport& report);
std::string rows_csv(const std::vector<LevelRow>& rows, const LevelRow& average);

/// Aligned Markdown table, two decimals, same columns as the CSV.
std::string rows_markdown(const std::vector<LevelRow>& rows, const LevelRow& average);
std::string report_markdown(const EvaluationReport& report);

/// Score and time means with sample standard deviations per level.
std::string scores_csv(const EvaluationReport& report);

/// One JSON object per trial record, newline-terminated.
std::string audit_jsonl(const std::vector<TrialRecord>& records);

struct ParsedReport {
  std::vector<LevelRow> rows;
  std::optional<LevelRow> average;
};

/// Reads what report_csv writes. Throws std::runtime_error on malformed input.
ParsedReport parse_report_csv(std::string_view text);

}  // namespace rr
