#pragma once

#include <span>
#include <string>
#include <vector>

namespace asymp {

enum class Kind { cosine, sine };

/// One term  coeff * t^t_power * cos|sin(harmonic * w * t).
///
/// harmonic 0 with Kind::cosine is a plain polynomial term. harmonic 0 with
/// Kind::sine is identically zero and never survives normalization.
struct TrigTerm {
  double coeff = 0.0;
  unsigned t_power = 0;
  unsigned harmonic = 0;
  Kind kind = Kind::cosine;

  double evaluate(double t, double base_frequency) const;

  friend bool operator==(const TrigTerm&, const TrigTerm&) = default;
};

/// Finite trigonometric polynomial in one time variable over a single base
/// frequency. Immutable after construction; every constructor normalizes.
///
/// Canonical form: terms sorted by (t_power, harmonic, kind), like terms
/// merged, coefficients below kPruneTolerance * max|coeff| removed.
class TrigPoly {
 public:
  static constexpr double kPruneTolerance = 1e-14;

  explicit TrigPoly(double base_frequency);
  TrigPoly(double base_frequency, std::vector<TrigTerm> terms);

  static TrigPoly constant(double base_frequency, double value);
  static TrigPoly cosine(double base_frequency, double coeff, unsigned harmonic = 1);
  static TrigPoly sine(double base_frequency, double coeff, unsigned harmonic = 1);

  double base_frequency() const noexcept { return omega_; }
  std::span<const TrigTerm> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of the (t_power, harmonic, kind) slot, 0 when absent.
  double coefficient(unsigned t_power, unsigned harmonic, Kind kind) const;

  double operator()(double t) const;

  /// Same coefficients reinterpreted over another base frequency.
  TrigPoly with_base_frequency(double base_frequency) const;

  /// Re-run canonicalization; idempotent.
  TrigPoly normalized() const;

  /// Largest |coeff|, 0 for the zero polynomial.
  double scale() const;

  /// `c * t^k * cos(n*w*t)` terms joined by ` + `; "0" when empty.
  std::string to_string() const;

  TrigPoly operator-() const;
  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(double s, const TrigPoly& a);
  friend TrigPoly operator*(const TrigPoly& a, double s) { return s * a; }

  /// Exact term-set equality (same base frequency, same terms).
  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  void normalize();

  double omega_;
  std::vector<TrigTerm> terms_;
};

/// Term-set equality with an absolute coefficient tolerance.
bool approx_equal(const TrigPoly& a, const TrigPoly& b, double tol);

/// Exact product, every trigonometric pair reduced by product-to-sum.
TrigPoly multiply(const TrigPoly& a, const TrigPoly& b);

/// a^n by repeated multiplication; n = 0 gives the constant 1.
TrigPoly power(const TrigPoly& a, unsigned n);

/// d^order/dt^order, product rule included for t_power >= 1.
TrigPoly differentiate(const TrigPoly& a, unsigned order = 1);

/// g(t) = (1/w) * integral_0^t sin(w(s - t)) f(s) ds in closed form.
///
/// g(0) = g'(0) = 0 and g'' + w^2 g = -f. Resonant first harmonics produce
/// terms with t_power = 1. Throws CapabilityError when f has t_power >= 1.
TrigPoly integrate_sine_kernel(const TrigPoly& f);

/// Every term with t_power >= 1; empty means the expression is bounded.
std::vector<TrigTerm> detect_secular(const TrigPoly& a);

}  // namespace asymp
