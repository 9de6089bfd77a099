#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "asymp/app/run_config.hpp"

namespace asymp::app {

using nlohmann::json;

/// Tidy table of pre-formatted cells, written as CSV.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& out) const;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_number(double v);

/// Methods available for a problem; the first is the default.
const std::vector<std::string>& methods_for(const std::string& problem);

/// Headline method-versus-oracle number of a report. `error` is the value
/// checked against --max-error.
struct Comparison {
  std::string metric;
  double method_value = 0.0;
  double oracle_value = 0.0;
  double error = 0.0;
};

struct Report {
  json document;
  Table table;
  Comparison comparison;
};

/// Run the selected method and its oracle comparison.
///
/// Throws ConfigError for configuration problems and asymp::Error for
/// method or oracle failures.
Report solve(const RunConfig& config);

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitMethod = 3,
  kExitDisagreement = 4,
};

struct RunOutcome {
  int exit_code = kExitOk;
  json document;
  Table table;
};

/// solve() with errors mapped to exit codes; the document always carries
/// "status" ("ok", "error", "disagreement") and, on failure, "error".
RunOutcome run(const RunConfig& config);

/// One row per grid point of the 1 or 2 sweep axes, in axis order (first
/// axis outermost). Cells run on up to config.jobs threads; a failing cell
/// is recorded in its row and the sweep continues.
RunOutcome sweep(const RunConfig& config);

/// max |WKB - oracle| / max |oracle| over the middle half of the domain,
/// sampled at 2001 points, for the cosine solution.
double wkb_mid_relative_error(const WkbSpec& spec, double tol = 1e-10);

/// Serialize in the configured format: JSON documents are pretty-printed
/// with two-space indent, CSV writes the table.
void write_outcome(const RunOutcome& outcome, OutputFormat format, std::ostream& out);

}  // namespace asymp::app
