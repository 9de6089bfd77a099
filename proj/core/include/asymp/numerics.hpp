#pragma once

#include <functional>
#include <vector>

namespace asymp {

using ScalarFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod quadrature of f over [a, b].
///
/// Throws NumericError when the error estimate stays above abs_tol.
double integrate(const ScalarFn& f, double a, double b, double abs_tol = 1e-12);

/// Root of f in [lo, hi] where f(lo) and f(hi) differ in sign.
double refine_root(const ScalarFn& f, double lo, double hi, double x_tol = 1e-14);

/// All isolated roots of f in [lo, hi].
///
/// Samples f on `samples` uniform points; sign changes between finite samples
/// are refined directly. A local extremum that approaches zero without a
/// sampled sign change is refined by golden-section search, so pairs of
/// close roots near a fold are not lost. Non-finite samples are skipped.
std::vector<double> find_roots(const ScalarFn& f, double lo, double hi, int samples,
                               double x_tol = 1e-13);

/// Chebyshev interpolant on [lo, hi] built from Chebyshev-Lobatto samples.
class ChebyshevInterpolant {
 public:
  ChebyshevInterpolant() = default;
  ChebyshevInterpolant(const ScalarFn& f, double lo, double hi, int degree);

  double operator()(double x) const;
  double derivative(double x) const;

  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

 private:
  static double clenshaw(const std::vector<double>& c, double s);

  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<double> coeffs_;
  std::vector<double> deriv_coeffs_;
};

}  // namespace asymp
