#pragma once

// Suite configuration (plain-text, nested key-value sections), the parallel
// suite runner, and the JSON-lines / CSV report writers.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rsm/checks.hpp"

namespace rsm {

struct SuiteConfig {
  uint64_t seed = 20250809;
  std::optional<int64_t> samples;  // global override
  std::optional<int> t_nodes;
  int threads = 0;
  std::string out = "reports/checks.jsonl";
  std::string summary = "reports/summary.csv";
  std::vector<CaseSpec> cases;
};

// Parse-or-throw with line-numbered diagnostics; unknown keys rejected.
SuiteConfig parse_suite_text(const std::string& text);
SuiteConfig parse_suite_file(const std::string& path);

struct SuiteResult {
  std::vector<CheckReport> reports;
  int exit_code = 0;  // 0 iff every verdict is pass or expected_violation
};

// Runs all cases (concurrently; output order is the case order).
SuiteResult run_suite(const SuiteConfig& config);

// One CheckReport per line, stable field order; wall time isolated under
// the "timing" key so golden comparisons can strip it.
std::string report_json_line(const CheckReport& rep);
std::string report_csv_header();
std::string report_csv_line(const CheckReport& rep);

// Fixed-width console line per report.
std::string report_console_line(const CheckReport& rep);

uint64_t fnv1a64(const std::string& s);

}  // namespace rsm
