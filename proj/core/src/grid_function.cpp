#include "asymp/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asymp {

void GridFunction::validate() const {
  if (points.size() != values.size()) throw std::invalid_argument("GridFunction: length mismatch");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i] > points[i - 1])) throw std::invalid_argument("GridFunction: points not strictly increasing");
  }
}

double GridFunction::interpolate(double x) const {
  if (points.empty()) throw std::invalid_argument("GridFunction: empty");
  if (x <= points.front()) return values.front();
  if (x >= points.back()) return values.back();
  auto it = std::upper_bound(points.begin(), points.end(), x);
  const auto i = static_cast<std::size_t>(it - points.begin());
  const double w = (x - points[i - 1]) / (points[i] - points[i - 1]);
  return (1.0 - w) * values[i - 1] + w * values[i];
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

void GridFunction::write_csv(std::ostream& out) const {
  const auto old = out.precision(17);
  out << "x,value\n";
  for (std::size_t i = 0; i < points.size(); ++i) out << points[i] << ',' << values[i] << '\n';
  out.precision(old);
}

}  // namespace asymp
