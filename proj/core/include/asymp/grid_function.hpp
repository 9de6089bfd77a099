#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace asymp {

/// Sampled function on a strictly increasing 1-D grid.
struct GridFunction {
  std::vector<double> points;
  std::vector<double> values;
  double tolerance = 0.0;
  std::string method;
  /// Named scalars attached by the producer (shooting slope, far-field checks, ...).
  std::map<std::string, double> info;

  /// Throws std::invalid_argument unless lengths match and points increase strictly.
  void validate() const;

  /// Piecewise-linear interpolation, clamped to the end values.
  double interpolate(double x) const;

  double max_abs() const;

  /// Two-column CSV with a `x,value` header.
  void write_csv(std::ostream& out) const;
};

}  // namespace asymp
