#include "asymp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "asymp/errors.hpp"

namespace asymp {

namespace {

struct Quadrature {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

// Boost 1.74's adaptive driver leaves sub-interval error estimates in the
// units of [-1, 1], so the bisection is done here and only the fixed GK15
// rule is taken from Boost.
Quadrature gk15(const ScalarFn& f, double a, double b, double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Quadrature q;
  q.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      [&](double x) { return half * f(mid + half * x); }, -1.0, 1.0, 0, 0.0, &q.error, &q.l1);
  q.l1 = std::abs(q.l1);
  if (depth == 0 || q.error <= abs_tol || q.error <= 1e-14 * q.l1 || !std::isfinite(q.value)) return q;
  const Quadrature left = gk15(f, a, mid, 0.5 * abs_tol, depth - 1);
  const Quadrature right = gk15(f, mid, b, 0.5 * abs_tol, depth - 1);
  return {left.value + right.value, left.error + right.error, left.l1 + right.l1};
}

}  // namespace

double integrate(const ScalarFn& f, double a, double b, double abs_tol) {
  if (a == b) return 0.0;
  const Quadrature q = gk15(f, a, b, abs_tol, 20);
  if (!std::isfinite(q.value)) throw NumericError("integrate: non-finite result");
  if (q.error > abs_tol && q.error > 1e-12 * q.l1) {
    throw NumericError("integrate: error estimate " + std::to_string(q.error) + " above tolerance on [" +
                       std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  return q.value;
}

double refine_root(const ScalarFn& f, double lo, double hi, double x_tol) {
  const double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoSolution("refine_root: no sign change in bracket");
  }
  std::uintmax_t max_iter = 200;
  auto tol = [x_tol](double x, double y) { return std::abs(x - y) <= x_tol * std::max(1.0, std::abs(x)); };
  auto [x0, x1] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  const double f0 = std::abs(f(x0));
  const double f1 = std::abs(f(x1));
  return f0 <= f1 ? x0 : x1;
}

namespace {

// Minimizes g on [a, b] by golden-section search; returns the abscissa.
double golden_minimize(const ScalarFn& g, double a, double b, double x_tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int i = 0; i < 200 && (b - a) > x_tol * std::max(1.0, std::abs(a)); ++i) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = g(d);
    }
  }
  return gc < gd ? c : d;
}

}  // namespace

std::vector<double> find_roots(const ScalarFn& f, double lo, double hi, int samples, double x_tol) {
  if (samples < 3 || !(hi > lo)) throw std::invalid_argument("find_roots: bad sampling");
  std::vector<double> xs(samples);
  std::vector<double> fs(samples);
  for (int i = 0; i < samples; ++i) {
    xs[i] = lo + (hi - lo) * i / (samples - 1);
    fs[i] = f(xs[i]);
  }
  std::vector<double> roots;
  auto push = [&roots, x_tol](double r) {
    if (roots.empty() || std::abs(roots.back() - r) > 10 * x_tol * std::max(1.0, std::abs(r))) roots.push_back(r);
  };
  for (int i = 0; i + 1 < samples; ++i) {
    const double a = fs[i];
    const double b = fs[i + 1];
    if (!std::isfinite(a) || !std::isfinite(b)) continue;
    if (a == 0.0) {
      push(xs[i]);
      continue;
    }
    if (b != 0.0 && std::signbit(a) != std::signbit(b)) {
      push(refine_root(f, xs[i], xs[i + 1], x_tol));
      continue;
    }
    // Extremum toward zero centred on sample i + 1.
    if (i + 2 < samples) {
      const double c = fs[i + 2];
      if (std::isfinite(c) && c != 0.0 && std::signbit(b) == std::signbit(c) &&
          std::abs(b) < std::abs(a) && std::abs(b) <= std::abs(c)) {
        const double s = std::signbit(b) ? -1.0 : 1.0;
        auto g = [&f, s](double x) {
          const double v = f(x);
          return std::isfinite(v) ? s * v : std::numeric_limits<double>::infinity();
        };
        const double xm = golden_minimize(g, xs[i], xs[i + 2], x_tol);
        const double fm = s * g(xm);
        if (fm == 0.0) {
          push(xm);
        } else if (std::signbit(fm) != std::signbit(b)) {
          push(refine_root(f, xs[i], xm, x_tol));
          push(refine_root(f, xm, xs[i + 2], x_tol));
          ++i;  // both roots lie before xs[i + 2]
        }
      }
    }
  }
  if (std::isfinite(fs.back()) && fs.back() == 0.0) push(xs.back());
  std::sort(roots.begin(), roots.end());
  return roots;
}

ChebyshevInterpolant::ChebyshevInterpolant(const ScalarFn& f, double lo, double hi, int degree)
    : lo_(lo), hi_(hi) {
  if (degree < 2 || !(hi > lo)) throw std::invalid_argument("ChebyshevInterpolant: bad arguments");
  const int n = degree;
  std::vector<double> samples(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double s = std::cos(std::numbers::pi * j / n);
    samples[j] = f(0.5 * (hi + lo) + 0.5 * (hi - lo) * s);
  }
  coeffs_.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      sum += w * samples[j] * std::cos(std::numbers::pi * j * k / n);
    }
    coeffs_[k] = 2.0 * sum / n;
  }
  coeffs_[0] *= 0.5;
  coeffs_[n] *= 0.5;

  deriv_coeffs_.assign(n + 1, 0.0);
  if (n >= 1) deriv_coeffs_[n - 1] = 2.0 * n * coeffs_[n];
  for (int k = n - 1; k >= 2; --k) deriv_coeffs_[k - 1] = deriv_coeffs_[k + 1] + 2.0 * k * coeffs_[k];
  deriv_coeffs_[0] = 0.5 * (deriv_coeffs_[2] + 2.0 * coeffs_[1]);
  const double scale = 2.0 / (hi - lo);
  for (auto& c : deriv_coeffs_) c *= scale;
}

double ChebyshevInterpolant::clenshaw(const std::vector<double>& c, double s) {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const double b0 = 2.0 * s * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + c[0];
}

double ChebyshevInterpolant::operator()(double x) const {
  const double s = (2.0 * x - (hi_ + lo_)) / (hi_ - lo_);
  return clenshaw(coeffs_, s);
}

double ChebyshevInterpolant::derivative(double x) const {
  const double s = (2.0 * x - (hi_ + lo_)) / (hi_ - lo_);
  return clenshaw(deriv_coeffs_, s);
}

}  // namespace asymp
