#pragma once

#include <functional>
#include <span>
#include <vector>

#include "asymp/grid_function.hpp"
#include "asymp/problems.hpp"

/// Independent numerical ground truth for every asymptotic method.
namespace asymp::oracle {

using State = std::vector<double>;
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Accepted steps of an adaptive run with cubic Hermite dense output.
class Trajectory {
 public:
  Trajectory(std::vector<double> times, std::vector<State> states, std::vector<State> derivatives,
             double tolerance);

  std::size_t dimension() const { return states_.front().size(); }
  std::size_t steps() const { return times_.size() - 1; }
  double start() const { return times_.front(); }
  double end() const { return times_.back(); }
  double tolerance() const { return tolerance_; }

  const std::vector<double>& times() const { return times_; }
  const State& state(std::size_t i) const { return states_[i]; }
  const State& derivative(std::size_t i) const { return derivatives_[i]; }
  const State& final_state() const { return states_.back(); }

  /// Dense output at t in [start, end].
  State at(double t) const;
  double at(double t, std::size_t component) const;

  /// Component i at the accepted step times.
  GridFunction component(std::size_t i) const;
  /// Component i resampled at the given (increasing) points.
  GridFunction sample(std::size_t i, std::span<const double> points) const;

 private:
  double hermite(std::size_t step, double t, std::size_t component) const;
  std::size_t locate(double t) const;

  std::vector<double> times_;
  std::vector<State> states_;
  std::vector<State> derivatives_;
  double tolerance_;
};

/// Dormand-Prince 5(4) with local error control: err_i <= tol * (1 + |y_i|).
///
/// Deterministic for fixed inputs. Throws IntegrationFailure on step-size
/// underflow or a non-finite state, carrying the last accepted time.
Trajectory integrate_ivp(const Rhs& rhs, State initial, double t0, double t1, double tol);

struct CycleMeasurement {
  double period = 0.0;
  double amplitude = 0.0;
  /// Upward crossings that happened before settle_time.
  int transients_skipped = 0;
  std::vector<double> crossing_times;
};

/// Period and amplitude of the orbit reached after settle_time.
///
/// Period is the mean of the last five intervals between upward zero
/// crossings of component 0, located on the Hermite interpolant. Throws
/// NoCycle when fewer than six crossings are found or the last five
/// intervals spread by more than 1e-4 relative.
CycleMeasurement measure_cycle(const Rhs& rhs, State initial, double settle_time, double tol);

/// First-order system for an oscillator; pendulum uses sin(u).
Rhs oscillator_rhs(const OscillatorSpec& spec);

/// Period of a conservative oscillator started at u(0) = amplitude, u'(0) = 0.
double oscillator_period(const OscillatorSpec& spec, double amplitude, double tol = 1e-10);

/// Slope interval scanned when shoot_bvp receives no bracket.
struct Bracket {
  double lo;
  double hi;
};

/// Far-field truncation of the Falkner-Skan condition f'(inf) = 1.
inline constexpr double kFalknerSkanFarField = 10.0;
inline constexpr double kFalknerSkanCheckField = 15.0;

/// Default slope brackets per problem kind.
std::vector<Bracket> default_brackets(const BvpSpec& problem);

/// All isolated solutions of a two-point problem by shooting on the unknown
/// initial slope (u'(0), y'(0) or f''(0)).
///
/// Each solution is returned on a uniform grid of 201 points with
/// info["slope"] set; Falkner-Skan solutions also carry info["fpp0_far"]
/// (the same branch re-shot with the check truncation) and f' in
/// info["fp_end"]. Solutions are ordered by slope. Throws NoSolution when no
/// bracket shows a sign change.
std::vector<GridFunction> shoot_bvp(const BvpSpec& problem, std::vector<Bracket> brackets = {},
                                    double tol = 1e-10);

/// Terminal mismatch of one shot; NaN when the integration fails.
double shooting_mismatch(const BvpSpec& problem, double slope, double tol = 1e-10,
                         double far_field = kFalknerSkanFarField);

/// Closed-form solution of eps y'' + y' + y = 0 with both boundary values.
std::function<double(double)> exact_singular(const BvpSpec& problem);

/// Initial slope y'(0) of the closed-form singular solution.
double exact_singular_slope(const BvpSpec& problem);

struct FoldInterval {
  double lo;  ///< two solutions here
  double hi;  ///< none here
};

/// Bisection on the Bratu solution count until hi - lo <= width.
FoldInterval bratu_fold(double lo, double hi, double width, double tol = 1e-10);

/// Numerical solution of eps^2 y'' + F y = 0 on [x_lo, x_hi] started from the
/// value and slope of F^{-1/4} cos(Phi / eps) at x_lo. Uses spec.dF when set,
/// otherwise a centered difference of F.
Trajectory wkb_reference(const WkbSpec& spec, double tol = 1e-10);

/// Number of Bratu solutions found by shooting at lambda.
int bratu_solution_count(double lambda, double tol = 1e-10);

}  // namespace asymp::oracle
