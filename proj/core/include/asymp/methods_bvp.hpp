#pragma once

#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "asymp/errors.hpp"
#include "asymp/numerics.hpp"
#include "asymp/problems.hpp"

namespace asymp {

// ---------------------------------------------------------------- Bratu, Ritz

enum class Branch { lower, upper };

std::string to_string(Branch b);

/// Stationary point of the Ritz functional for the trial u = A x (1 - x).
struct RitzResult {
  double A = 0.0;
  /// dJ/dA at A.
  double stationarity_residual = 0.0;
  Branch branch = Branch::lower;
};

/// dJ/dA = A/3 - lambda * integral_0^1 x(1-x) exp(A x(1-x)) dx.
double ritz_gradient(double A, double lambda);

/// Roots of dJ/dA on A in [0, 60], ordered lower then upper.
///
/// Beyond the Ritz fold the list is empty and `diagnostic` (if given)
/// explains why. lambda = 0 has the single root A = 0. Throws InvalidProblem
/// for lambda < 0.
std::vector<RitzResult> ritz_bratu(double lambda, std::string* diagnostic = nullptr);

/// Largest lambda with a Ritz root: max over A of A / (3 g(A)).
struct RitzFold {
  double lambda = 0.0;
  double A = 0.0;
};
RitzFold ritz_fold();

// ------------------------------------------------------------------ Bratu, VIM

/// How the linear-kernel correction functional treats x = 1.
enum class BoundaryMode {
  /// The functional as written; keeps u'(0) fixed and so solves the initial
  /// value problem u(0) = u'(0) = 0.
  raw,
  /// Subtract x * T[u](1) after each step so u(1) = 0 holds. This is the
  /// Picard iteration with the Green's function of -d^2/dx^2.
  enforce_right,
};

/// One step u_{n+1}(x) = u_n(x) + integral_0^x (s - x)(u_n'' + alpha e^{u_n}) ds
/// on [0, 1], with u_n(0) = 0. The result is a Chebyshev interpolant.
ChebyshevInterpolant vim_bratu_iterate(const ChebyshevInterpolant& u_n, double alpha,
                                       BoundaryMode mode = BoundaryMode::enforce_right);

/// u == 0 on [0, 1].
ChebyshevInterpolant bratu_zero_profile();

struct VimBratuResult {
  ChebyshevInterpolant u;
  int iterations = 0;
  /// sup |u_{k+1} - u_k| per step.
  std::vector<double> increments;
  bool converged = false;
};

/// Iterate from u_0 == 0 until the increment falls below tol or max_iter.
VimBratuResult vim_bratu_solve(double lambda, int max_iter = 12, double tol = 1e-12,
                               BoundaryMode mode = BoundaryMode::enforce_right);

// -------------------------------------------------------------- KdV soliton

struct SolitonParams {
  double p = 0.0;
  double q = 0.0;
};

/// u = p sech^2(q xi) balanced against -c u - 3 u^2 + u'' = 0.
/// Throws InvalidProblem for c <= 0.
SolitonParams ritz_soliton(const TravelingWaveSpec& spec);

/// u(x) = p sech^2(q (x - offset)) for the solved parameters.
std::function<double(double)> soliton_profile(const TravelingWaveSpec& spec);

/// The solved profile with closed-form first and second derivatives.
Candidate soliton_candidate(const TravelingWaveSpec& spec);

// ---------------------------------------------- Singular linear BVP, matching

struct MatchedSolution {
  std::function<double(double)> outer;      ///< on [0, 1]
  std::function<double(double)> inner;      ///< on [0, t_f], t = x / eps
  std::function<double(double)> composite;  ///< on [0, 1]
  double eps = 0.0;
  double t_f = 0.0;
  int iterations = 0;
  /// Y'(0) of the inner solution.
  double inner_slope = 0.0;
  /// Fast-mode content of the inner solution at t_f.
  double terminal_fast_amplitude = 0.0;
  /// Every terminal point tried, in order.
  std::vector<double> t_f_history;

  /// Columns x, inner, outer, composite; inner is nan beyond eps * t_f.
  void write_csv(std::ostream& out, std::span<const double> grid) const;
};

/// Boundary-value technique for eps y'' + y' + y = 0.
///
/// The inner problem Y'' + Y' + eps Y = 0, Y(0) = alpha,
/// Y(t_f) = outer(eps t_f) is solved by linear shooting on Y'(0). t_f doubles
/// from 5 (capped at 1/eps) until the inner solution's fast mode has decayed
/// below eps * max(|alpha|, |outer(0)|) at t_f, or the composite moves by less
/// than 1e-6. Throws NonConvergence after 20 doublings.
MatchedSolution bvt_solve(const BvpSpec& spec);

// ---------------------------------------------------------------------- WKB

struct WkbSolution {
  std::function<double(double)> phase;      ///< integral_{x_lo}^x sqrt(F)
  std::function<double(double)> amplitude;  ///< F^{-1/4}
  std::function<double(double)> cos_solution;
  std::function<double(double)> sin_solution;
  double eps = 0.0;
  double x_lo = 0.0;
  double x_hi = 1.0;

  /// Columns x, phase, amplitude, solution (the cosine solution).
  void write_csv(std::ostream& out, std::span<const double> grid) const;
};

/// Leading-order WKB pair A0 cos(Phi / eps), A0 sin(Phi / eps).
/// Throws TurningPoint when F <= 0 at any of 1001 sample points.
WkbSolution wkb_solve(const WkbSpec& spec);

// ------------------------------------------------------- Schroedinger-Newton

struct SNewtonState {
  std::vector<double> radii;
  std::vector<double> S;
  std::vector<double> U;
  /// sup-norm change of the last sweep.
  double picard_residual = 0.0;
  std::vector<double> residual_history;
  int sweeps = 0;
  bool converged = false;
};

/// Divergent Picard iteration; carries the last state.
class SNewtonDivergence : public NonConvergence {
 public:
  SNewtonDivergence(const std::string& what, SNewtonState state);
  const SNewtonState& state() const noexcept { return *state_; }

 private:
  std::shared_ptr<const SNewtonState> state_;
};

/// Picard sweeps on the integral form with trapezoidal quadrature, until the
/// sweep change is below 1e-10 or 500 sweeps. Throws SNewtonDivergence when
/// the change grows for 10 consecutive sweeps or turns non-finite.
SNewtonState snewton_picard(const SNewtonSpec& spec);

struct SNewtonFdResidual {
  double s_residual = 0.0;  ///< max |S'' + 2S'/r + S U|
  double u_residual = 0.0;  ///< max |U'' + 2U'/r + S^2|
};

/// Centered radial finite differences on the interior points.
SNewtonFdResidual snewton_fd_residual(const SNewtonState& state);

}  // namespace asymp
