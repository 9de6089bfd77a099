#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "asymp/errors.hpp"
#include "asymp/problems.hpp"

namespace asymp::app {

/// Invalid or inconsistent run configuration (exit status 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class OutputFormat { json, csv };

struct SweepAxis {
  std::string parameter;
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;

  /// Value of grid point i; steps == 1 yields lo.
  double value(int i) const;
};

struct RunConfig {
  std::string problem;
  ParamMap params;
  /// Empty selects the problem's default method.
  std::string method;
  /// Iteration/expansion order; unset uses the method default.
  std::optional<unsigned> order;
  /// Oracle integration tolerance.
  double tol = 1e-10;
  OutputFormat format = OutputFormat::json;
  std::vector<SweepAxis> axes;
  std::string out_path;
  int jobs = 1;
  std::optional<double> max_error;

  /// Throws ConfigError on any inconsistency, including parameters or sweep
  /// axes the problem does not accept.
  void validate() const;
};

/// Fill a RunConfig from `[problem]`, `[run]` and `[sweep]` sections.
///
///   [problem]  name = duffing_cubic, then numeric parameters
///   [run]      method, order, tol, format, out, jobs, max_error
///   [sweep]    axis1 = <param> <lo> <hi> <steps>, optional axis2
RunConfig config_from_stream(std::istream& in);
RunConfig config_from_file(const std::string& path);

/// Parse "<param> <lo> <hi> <steps>" or "<param>:<lo>:<hi>:<steps>".
SweepAxis parse_axis(const std::string& text);

OutputFormat parse_format(const std::string& text);
std::string to_string(OutputFormat f);

/// Environment variable naming the default configuration file.
inline constexpr const char* kConfigEnv = "ASYMP_CONFIG";

}  // namespace asymp::app
