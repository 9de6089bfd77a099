#include "asymp/methods_bvp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "asymp/oracle.hpp"

namespace asymp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Upper end of the amplitude search. The upper branch runs off to infinity as
// lambda -> 0, so below lambda ~ 2e-4 only the lower root is inside.
constexpr double kRitzAmplitudeMax = 60.0;

double bratu_weight(double A) {
  return integrate([A](double x) { return x * (1.0 - x) * std::exp(A * x * (1.0 - x)); }, 0.0, 1.0, 1e-12);
}

class PrecisionGuard {
 public:
  explicit PrecisionGuard(std::ostream& out) : out_(out), saved_(out.precision()) { out_.precision(16); }
  ~PrecisionGuard() { out_.precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::ostream& out_;
  std::streamsize saved_;
};

}  // namespace

std::string to_string(Branch b) { return b == Branch::lower ? "lower" : "upper"; }

double ritz_gradient(double A, double lambda) { return A / 3.0 - lambda * bratu_weight(A); }

std::vector<RitzResult> ritz_bratu(double lambda, std::string* diagnostic) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidProblem("ritz_bratu: lambda must be >= 0");
  if (lambda == 0.0) {
    if (diagnostic) diagnostic->clear();
    return {RitzResult{0.0, 0.0, Branch::lower}};
  }
  const auto roots = find_roots([lambda](double A) { return ritz_gradient(A, lambda); }, 0.0, kRitzAmplitudeMax, 1200);
  std::vector<RitzResult> out;
  for (double A : roots) {
    const double r = ritz_gradient(A, lambda);
    if (std::abs(r) >= 1e-10) {
      std::ostringstream msg;
      msg << "ritz_bratu: root A = " << A << " left residual " << r;
      throw NumericError(msg.str());
    }
    out.push_back({A, r, out.empty() ? Branch::lower : Branch::upper});
  }
  if (diagnostic) {
    diagnostic->clear();
    if (out.empty()) {
      const auto fold = ritz_fold();
      std::ostringstream msg;
      msg << "lambda = " << lambda << " lies beyond the Ritz fold lambda* = " << fold.lambda << " (A = " << fold.A
          << "); no stationary point";
      *diagnostic = msg.str();
    }
  }
  return out;
}

RitzFold ritz_fold() {
  // Each root satisfies lambda = A / (3 g(A)); the fold is its maximum.
  auto neg = [](double A) { return -A / (3.0 * bratu_weight(A)); };
  const auto [A, v] = boost::math::tools::brent_find_minima(neg, 0.0, 20.0, 40);
  return {-v, A};
}

ChebyshevInterpolant bratu_zero_profile() {
  return ChebyshevInterpolant([](double) { return 0.0; }, 0.0, 1.0, 2);
}

ChebyshevInterpolant vim_bratu_iterate(const ChebyshevInterpolant& u_n, double alpha, BoundaryMode mode) {
  if (u_n.lower() != 0.0 || u_n.upper() != 1.0) throw DomainError("vim_bratu_iterate: u_n must live on [0, 1]");
  if (std::abs(u_n(0.0)) > 1e-10) throw DomainError("vim_bratu_iterate: u_n(0) must vanish");
  if (!std::isfinite(alpha)) throw InvalidProblem("vim_bratu_iterate: alpha must be finite");

  // integral_0^x (s - x) u''(s) ds = x u'(0) - u(x) when u(0) = 0.
  const double slope0 = u_n.derivative(0.0);
  auto step = [&](double x) {
    if (x <= 0.0) return 0.0;
    const double source =
        alpha == 0.0 ? 0.0 : integrate([&](double s) { return (s - x) * alpha * std::exp(u_n(s)); }, 0.0, x, 1e-13);
    return x * slope0 + source;
  };
  if (mode == BoundaryMode::raw) return ChebyshevInterpolant(step, 0.0, 1.0, 32);
  const double right = step(1.0);
  return ChebyshevInterpolant([&](double x) { return step(x) - x * right; }, 0.0, 1.0, 32);
}

VimBratuResult vim_bratu_solve(double lambda, int max_iter, double tol, BoundaryMode mode) {
  if (!(lambda >= 0.0)) throw InvalidProblem("vim_bratu_solve: lambda must be >= 0");
  if (max_iter < 1) throw std::invalid_argument("vim_bratu_solve: max_iter must be >= 1");
  VimBratuResult r;
  r.u = bratu_zero_profile();
  for (int k = 0; k < max_iter; ++k) {
    auto next = vim_bratu_iterate(r.u, lambda, mode);
    double inc = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double x = i / 200.0;
      inc = std::max(inc, std::abs(next(x) - r.u(x)));
    }
    if (!std::isfinite(inc)) throw NumericError("vim_bratu_solve: iterate became non-finite");
    r.u = std::move(next);
    r.increments.push_back(inc);
    r.iterations = k + 1;
    if (inc < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

SolitonParams ritz_soliton(const TravelingWaveSpec& spec) {
  const double c = spec.wave_speed;
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidProblem("ritz_soliton: wave speed must be positive");
  // sech^4 balance gives p = -2 q^2, sech^2 balance gives 4 q^2 = c.
  const double q = 0.5 * std::sqrt(c);
  return {-2.0 * q * q, q};
}

std::function<double(double)> soliton_profile(const TravelingWaveSpec& spec) {
  const auto [p, q] = ritz_soliton(spec);
  const double x0 = spec.offset;
  return [p, q, x0](double x) {
    const double s = 1.0 / std::cosh(q * (x - x0));
    return p * s * s;
  };
}

Candidate soliton_candidate(const TravelingWaveSpec& spec) {
  const auto [p, q] = ritz_soliton(spec);
  const double x0 = spec.offset;
  Candidate c;
  c.value = soliton_profile(spec);
  c.d1 = [p, q, x0](double x) {
    const double s = 1.0 / std::cosh(q * (x - x0));
    return -2.0 * p * q * s * s * std::tanh(q * (x - x0));
  };
  c.d2 = [p, q, x0](double x) {
    const double s2 = std::pow(1.0 / std::cosh(q * (x - x0)), 2);
    return p * q * q * (4.0 * s2 - 6.0 * s2 * s2);
  };
  return c;
}

void MatchedSolution::write_csv(std::ostream& out, std::span<const double> grid) const {
  PrecisionGuard guard(out);
  out << "x,inner,outer,composite\n";
  for (double x : grid) {
    const double t = x / eps;
    const double in = t <= t_f * (1.0 + 1e-12) ? inner(std::min(t, t_f)) : kNaN;
    out << x << ',' << in << ',' << outer(x) << ',' << composite(x) << '\n';
  }
}

namespace {

struct InnerSolve {
  std::shared_ptr<const oracle::Trajectory> trajectory;
  double slope;
};

InnerSolve shoot_inner(double eps, double alpha, double target, double t_f) {
  const oracle::Rhs rhs = [eps](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -y[1] - eps * y[0];
  };
  constexpr double kTol = 1e-12;
  auto shot = [&](double s) { return oracle::integrate_ivp(rhs, {alpha, s}, 0.0, t_f, kTol); };
  const double m0 = shot(0.0).final_state()[0] - target;
  const double m1 = shot(1.0).final_state()[0] - target;
  const double dm = m1 - m0;
  if (dm == 0.0 || !std::isfinite(dm)) throw NumericError("bvt_solve: inner shots are degenerate");
  double s = -m0 / dm;
  auto tr = shot(s);
  s -= (tr.final_state()[0] - target) / dm;
  tr = shot(s);
  return {std::make_shared<const oracle::Trajectory>(std::move(tr)), s};
}

}  // namespace

MatchedSolution bvt_solve(const BvpSpec& spec) {
  if (spec.kind != BvpKind::singular_linear) throw InvalidProblem("bvt_solve: needs a singular_linear problem");
  spec.validate();
  const double eps = spec.eps;
  const double alpha = spec.left_value;
  const double beta = spec.right_value;

  auto outer = [beta](double x) { return beta * std::exp(1.0 - x); };
  const double disc = std::sqrt(1.0 - 4.0 * eps);
  const double r1 = 0.5 * (-1.0 + disc);
  const double r2 = 0.5 * (-1.0 - disc);
  const double settle = eps * std::max(std::abs(alpha), std::abs(outer(0.0)));
  const double t_cap = 1.0 / eps;

  MatchedSolution best;
  std::vector<double> previous;
  double t_f = 5.0;
  for (int k = 0; k <= 20; ++k, t_f *= 2.0) {
    const double tf = std::min(t_f, t_cap);
    const auto solve = shoot_inner(eps, alpha, outer(eps * tf), tf);
    const auto tr = solve.trajectory;

    MatchedSolution m;
    m.eps = eps;
    m.t_f = tf;
    m.iterations = k + 1;
    m.inner_slope = solve.slope;
    m.t_f_history = best.t_f_history;
    m.t_f_history.push_back(tf);
    m.outer = outer;
    m.inner = [tr](double t) { return tr->at(t, 0); };
    m.composite = [tr, outer, eps, tf](double x) {
      if (x < 0.0 || x > 1.0) throw DomainError("bvt composite: x outside [0, 1]");
      const double t = x / eps;
      return t <= tf ? tr->at(t, 0) : outer(x);
    };
    const auto& end = tr->final_state();
    m.terminal_fast_amplitude = (end[1] - r1 * end[0]) / (r2 - r1);

    std::vector<double> sampled(401);
    for (int i = 0; i <= 400; ++i) sampled[i] = m.composite(i / 400.0);
    double change = std::numeric_limits<double>::infinity();
    if (!previous.empty()) {
      change = 0.0;
      for (std::size_t i = 0; i < sampled.size(); ++i) change = std::max(change, std::abs(sampled[i] - previous[i]));
    }
    previous = std::move(sampled);
    best = std::move(m);
    if (std::abs(best.terminal_fast_amplitude) <= settle || change < 1e-6) return best;
  }
  throw NonConvergence("bvt_solve: composite did not stabilize after 20 doublings of t_f");
}

void WkbSolution::write_csv(std::ostream& out, std::span<const double> grid) const {
  PrecisionGuard guard(out);
  out << "x,phase,amplitude,solution\n";
  for (double x : grid) out << x << ',' << phase(x) << ',' << amplitude(x) << ',' << cos_solution(x) << '\n';
}

WkbSolution wkb_solve(const WkbSpec& spec) {
  spec.validate();
  const double lo = spec.x_lo;
  const double hi = spec.x_hi;
  for (int i = 0; i <= 1000; ++i) {
    const double x = lo + (hi - lo) * i / 1000.0;
    const double f = spec.F(x);
    if (!(f > 0.0)) {
      std::ostringstream msg;
      msg << "wkb_solve: F(" << x << ") = " << f << " is not positive";
      throw TurningPoint(msg.str());
    }
  }
  const auto F = spec.F;
  const double slack = 1e-12 * std::max(1.0, hi - lo);
  auto check = [lo, hi, slack](double x) {
    if (x < lo - slack || x > hi + slack) throw DomainError("wkb: x outside the problem domain");
  };

  WkbSolution w;
  w.eps = spec.eps;
  w.x_lo = lo;
  w.x_hi = hi;
  w.phase = [F, lo, check](double x) {
    check(x);
    if (x <= lo) return 0.0;
    return integrate([&F](double s) { return std::sqrt(F(s)); }, lo, x, 1e-13);
  };
  w.amplitude = [F, check](double x) {
    check(x);
    return std::pow(F(x), -0.25);
  };
  const double eps = spec.eps;
  w.cos_solution = [phase = w.phase, amp = w.amplitude, eps](double x) { return amp(x) * std::cos(phase(x) / eps); };
  w.sin_solution = [phase = w.phase, amp = w.amplitude, eps](double x) { return amp(x) * std::sin(phase(x) / eps); };
  return w;
}

SNewtonDivergence::SNewtonDivergence(const std::string& what, SNewtonState state)
    : NonConvergence(what), state_(std::make_shared<const SNewtonState>(std::move(state))) {}

SNewtonState snewton_picard(const SNewtonSpec& spec) {
  spec.validate();
  if (spec.grid_points < 64) throw InvalidProblem("snewton: grid_points must be >= 64");
  const std::size_t n = static_cast<std::size_t>(spec.grid_points);
  const double h = spec.r_max / static_cast<double>(n - 1);
  const double theta = spec.relaxation;

  SNewtonState st;
  st.radii.resize(n);
  for (std::size_t i = 0; i < n; ++i) st.radii[i] = h * static_cast<double>(i);
  st.radii.back() = spec.r_max;
  st.S.assign(n, spec.s0);
  st.U.assign(n, spec.u0);

  // S(r) = S0 - (integral_0^r x g dx - (1/r) integral_0^r x^2 g dx), trapezoidal.
  auto apply = [&](const std::vector<double>& g, double v0, std::vector<double>& out) {
    double i1 = 0.0;
    double i2 = 0.0;
    out[0] = v0;
    for (std::size_t i = 1; i < n; ++i) {
      const double xa = st.radii[i - 1];
      const double xb = st.radii[i];
      const double dx = xb - xa;
      i1 += 0.5 * dx * (xa * g[i - 1] + xb * g[i]);
      i2 += 0.5 * dx * (xa * xa * g[i - 1] + xb * xb * g[i]);
      out[i] = v0 - (i1 - i2 / xb);
    }
  };

  std::vector<double> gs(n), gu(n), s_new(n), u_new(n);
  int rising = 0;
  constexpr int kMaxSweeps = 500;
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      gs[i] = st.S[i] * st.U[i];
      gu[i] = st.S[i] * st.S[i];
    }
    apply(gs, spec.s0, s_new);
    apply(gu, spec.u0, u_new);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = (1.0 - theta) * st.S[i] + theta * s_new[i];
      const double u = (1.0 - theta) * st.U[i] + theta * u_new[i];
      change = std::max({change, std::abs(s - st.S[i]), std::abs(u - st.U[i])});
      st.S[i] = s;
      st.U[i] = u;
    }
    st.S[0] = spec.s0;
    st.U[0] = spec.u0;
    st.sweeps = sweep;
    st.picard_residual = change;
    if (!st.residual_history.empty() && change > st.residual_history.back()) {
      ++rising;
    } else {
      rising = 0;
    }
    st.residual_history.push_back(change);
    if (!std::isfinite(change)) throw SNewtonDivergence("snewton_picard: iterate became non-finite", st);
    if (rising >= 10) {
      std::ostringstream msg;
      msg << "snewton_picard: sweep change grew for 10 consecutive sweeps (now " << change << ")";
      throw SNewtonDivergence(msg.str(), st);
    }
    if (change < 1e-10) {
      st.converged = true;
      break;
    }
  }
  return st;
}

SNewtonFdResidual snewton_fd_residual(const SNewtonState& state) {
  const auto& r = state.radii;
  const std::size_t n = r.size();
  if (n < 3 || state.S.size() != n || state.U.size() != n) {
    throw std::invalid_argument("snewton_fd_residual: inconsistent state");
  }
  SNewtonFdResidual out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h = r[i + 1] - r[i];
    auto lap = [&](const std::vector<double>& f) {
      const double d2 = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
      const double d1 = (f[i + 1] - f[i - 1]) / (2.0 * h);
      return d2 + 2.0 * d1 / r[i];
    };
    out.s_residual = std::max(out.s_residual, std::abs(lap(state.S) + state.S[i] * state.U[i]));
    out.u_residual = std::max(out.u_residual, std::abs(lap(state.U) + state.S[i] * state.S[i]));
  }
  return out;
}

}  // namespace asymp
