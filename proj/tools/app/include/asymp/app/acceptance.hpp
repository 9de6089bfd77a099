#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asymp/app/run_config.hpp"

namespace asymp::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured quantities behind the verdict.
  std::string detail;
};

struct AcceptanceOptions {
  /// Directory holding the committed golden reports.
  std::string golden_dir;
};

inline constexpr int kCriterionCount = 11;

/// Evaluate one criterion (1..11). Never throws; an exception inside a
/// criterion is reported as a failure with its message.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS [n] name: detail" / "FAIL [n] name: detail".
void print_result(std::ostream& out, const CriterionResult& r);

struct GoldenCase {
  std::string name;
  RunConfig config;
};

/// Fixed report configurations whose JSON output is committed.
const std::vector<GoldenCase>& golden_cases();

/// Regenerate <dir>/<name>.json for every golden case.
void write_golden(const std::string& dir);

/// Structural comparison; numbers agree when |a - b| <= tol * max(1, |a|, |b|).
/// On mismatch, `where` receives the JSON path of the first difference.
bool json_close(const nlohmann::json& a, const nlohmann::json& b, double tol, std::string* where = nullptr);

}  // namespace asymp::app
