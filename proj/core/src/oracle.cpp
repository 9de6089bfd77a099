#include "asymp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "asymp/errors.hpp"
#include "asymp/numerics.hpp"

namespace asymp::oracle {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr std::size_t kMaxSteps = 20'000'000;

bool all_finite(const State& y) {
  return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

Trajectory::Trajectory(std::vector<double> times, std::vector<State> states, std::vector<State> derivatives,
                       double tolerance)
    : times_(std::move(times)),
      states_(std::move(states)),
      derivatives_(std::move(derivatives)),
      tolerance_(tolerance) {}

std::size_t Trajectory::locate(double t) const {
  if (t < times_.front() || t > times_.back()) {
    std::ostringstream msg;
    msg << "Trajectory: t = " << t << " outside [" << times_.front() << ", " << times_.back() << "]";
    throw DomainError(msg.str());
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (i == 0) return 0;
  return std::min(i - 1, times_.size() - 2);
}

double Trajectory::hermite(std::size_t step, double t, std::size_t c) const {
  const double t0 = times_[step];
  const double h = times_[step + 1] - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * states_[step][c] + h10 * h * derivatives_[step][c] + h01 * states_[step + 1][c] +
         h11 * h * derivatives_[step + 1][c];
}

State Trajectory::at(double t) const {
  if (times_.size() == 1) return states_.front();
  const std::size_t i = locate(t);
  State y(dimension());
  for (std::size_t c = 0; c < y.size(); ++c) y[c] = hermite(i, t, c);
  return y;
}

double Trajectory::at(double t, std::size_t component) const {
  if (times_.size() == 1) return states_.front()[component];
  return hermite(locate(t), t, component);
}

GridFunction Trajectory::component(std::size_t i) const {
  GridFunction g;
  g.points = times_;
  g.values.reserve(times_.size());
  for (const auto& y : states_) g.values.push_back(y[i]);
  g.tolerance = tolerance_;
  g.method = "dopri5";
  return g;
}

GridFunction Trajectory::sample(std::size_t i, std::span<const double> points) const {
  GridFunction g;
  g.points.assign(points.begin(), points.end());
  g.values.reserve(points.size());
  for (double t : points) g.values.push_back(at(t, i));
  g.tolerance = tolerance_;
  g.method = "dopri5";
  return g;
}

Trajectory integrate_ivp(const Rhs& rhs, State initial, double t0, double t1, double tol) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate_ivp: span must satisfy t1 > t0");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_ivp: tol must be positive");
  if (initial.empty()) throw std::invalid_argument("integrate_ivp: empty initial state");
  const std::size_t n = initial.size();

  std::vector<double> times{t0};
  std::vector<State> states{initial};
  State f(n);
  rhs(t0, initial, f);
  if (!all_finite(f)) throw IntegrationFailure("integrate_ivp: non-finite derivative at start", t0);
  std::vector<State> derivs{f};

  State y = std::move(initial);
  State k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y5(n);
  double t = t0;
  double h = std::min(t1 - t0, 1e-3 * std::max(1.0, t1 - t0));
  const double h_min = 1e-14 * std::max({1.0, std::abs(t0), std::abs(t1)});

  for (std::size_t step = 0; t < t1; ++step) {
    if (step > kMaxSteps) throw IntegrationFailure("integrate_ivp: step budget exhausted", t);
    if (t + h > t1) h = t1 - t;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * f[i];
    rhs(t + c2 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * f[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * f[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * f[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * f[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (std::size_t i = 0; i < n; ++i)
      y5[i] = y[i] + h * (b1 * f[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y5, k7);

    double err = 0.0;
    bool finite = all_finite(y5) && all_finite(k7);
    if (finite) {
      for (std::size_t i = 0; i < n; ++i) {
        const double e = h * (e1 * f[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale = tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
        err = std::max(err, std::abs(e) / scale);
      }
      finite = std::isfinite(err);
    }

    if (finite && err <= 1.0) {
      t = (h == t1 - t) ? t1 : t + h;
      y = y5;
      f = k7;
      times.push_back(t);
      states.push_back(y);
      derivs.push_back(f);
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      h *= grow;
    } else {
      h *= finite ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.25;
    }
    if (t < t1 && h < h_min) {
      std::ostringstream msg;
      msg << "integrate_ivp: step size underflow at t = " << t;
      throw IntegrationFailure(msg.str(), t);
    }
  }
  return Trajectory(std::move(times), std::move(states), std::move(derivs), tol);
}

namespace {

// Upward zero crossings of component 0 inside the trajectory.
void collect_crossings(const Trajectory& tr, std::vector<double>& out) {
  for (std::size_t i = 0; i < tr.steps(); ++i) {
    const double ya = tr.state(i)[0];
    const double yb = tr.state(i + 1)[0];
    if (ya < 0.0 && yb >= 0.0) {
      const double ta = tr.times()[i];
      const double tb = tr.times()[i + 1];
      if (yb == 0.0) {
        out.push_back(tb);
        continue;
      }
      out.push_back(refine_root([&tr](double t) { return tr.at(t, 0); }, ta, tb, 1e-15));
    }
  }
}

}  // namespace

CycleMeasurement measure_cycle(const Rhs& rhs, State initial, double settle_time, double tol) {
  CycleMeasurement m;
  State y = std::move(initial);
  double t = 0.0;
  if (settle_time > 0.0) {
    auto settle = integrate_ivp(rhs, y, 0.0, settle_time, tol);
    std::vector<double> skipped;
    collect_crossings(settle, skipped);
    m.transients_skipped = static_cast<int>(skipped.size());
    y = settle.final_state();
    t = settle_time;
  }

  constexpr int kWanted = 12;
  constexpr double kChunk = 50.0;
  constexpr double kHorizon = 5000.0;
  std::vector<Trajectory> chunks;
  while (static_cast<int>(m.crossing_times.size()) < kWanted && t < settle_time + kHorizon) {
    auto tr = integrate_ivp(rhs, y, t, t + kChunk, tol);
    collect_crossings(tr, m.crossing_times);
    y = tr.final_state();
    t = tr.end();
    chunks.push_back(std::move(tr));
  }
  if (m.crossing_times.size() < 6) {
    throw NoCycle("measure_cycle: fewer than six upward crossings after settle time");
  }

  const std::size_t k = m.crossing_times.size();
  std::vector<double> intervals;
  for (std::size_t i = k - 5; i < k; ++i) intervals.push_back(m.crossing_times[i] - m.crossing_times[i - 1]);
  const double mean = std::accumulate(intervals.begin(), intervals.end(), 0.0) / intervals.size();
  const auto [mn, mx] = std::minmax_element(intervals.begin(), intervals.end());
  if (!(mean > 0.0) || (*mx - *mn) / mean >= 1e-4) {
    throw NoCycle("measure_cycle: crossing intervals have not settled");
  }
  m.period = mean;

  const double t_hi = m.crossing_times.back();
  const double t_lo = t_hi - mean;
  double amp = 0.0;
  for (const auto& tr : chunks) {
    for (std::size_t i = 0; i < tr.steps(); ++i) {
      const double a = tr.times()[i];
      const double b = tr.times()[i + 1];
      if (b < t_lo || a > t_hi) continue;
      constexpr int kSub = 16;
      for (int j = 0; j <= kSub; ++j) {
        const double s = a + (b - a) * j / kSub;
        amp = std::max(amp, std::abs(tr.at(s, 0)));
      }
    }
  }
  m.amplitude = amp;
  return m;
}

Rhs oscillator_rhs(const OscillatorSpec& spec) {
  if (spec.kind == OscillatorKind::pendulum) {
    return [](double, std::span<const double> y, std::span<double> dy) {
      dy[0] = y[1];
      dy[1] = -std::sin(y[0]);
    };
  }
  const OscillatorSpec s = spec;
  return [s](double t, std::span<const double> y, std::span<double> dy) {
    const double u = y[0];
    const double v = y[1];
    const double u2 = u * u;
    dy[0] = v;
    dy[1] = -(s.linear_coeff * u + s.quadratic_coeff * u2 + s.cubic_coeff * u2 * u + s.quintic_coeff * u2 * u2 * u -
              s.vdp_coeff * (1.0 - u2) * v + s.damping * v - s.forcing * std::cos(s.forcing_frequency * t));
  };
}

double oscillator_period(const OscillatorSpec& spec, double amplitude, double tol) {
  return measure_cycle(oscillator_rhs(spec), {amplitude, 0.0}, 0.0, tol).period;
}

namespace {

struct Shot {
  Rhs rhs;
  State initial;
  double span;
};

Shot make_shot(const BvpSpec& p, double slope, double far_field) {
  switch (p.kind) {
    case BvpKind::bratu: {
      const double lambda = p.lambda;
      return {[lambda](double, std::span<const double> y, std::span<double> dy) {
                dy[0] = y[1];
                dy[1] = -lambda * std::exp(y[0]);
              },
              {p.left_value, slope},
              1.0};
    }
    case BvpKind::singular_linear: {
      const double eps = p.eps;
      return {[eps](double, std::span<const double> y, std::span<double> dy) {
                dy[0] = y[1];
                dy[1] = -(y[1] + y[0]) / eps;
              },
              {p.left_value, slope},
              1.0};
    }
    case BvpKind::falkner_skan: {
      const double beta = p.beta_fs;
      return {[beta](double, std::span<const double> y, std::span<double> dy) {
                dy[0] = y[1];
                dy[1] = y[2];
                dy[2] = -y[0] * y[2] - beta * (1.0 - y[1] * y[1]);
              },
              {0.0, 0.0, slope},
              far_field};
    }
  }
  throw std::logic_error("unreachable");
}

double terminal_value(const BvpSpec& p, const State& end) {
  return p.kind == BvpKind::falkner_skan ? end[1] - 1.0 : end[0] - p.right_value;
}

}  // namespace

double shooting_mismatch(const BvpSpec& problem, double slope, double tol, double far_field) {
  const Shot shot = make_shot(problem, slope, far_field);
  try {
    const auto tr = integrate_ivp(shot.rhs, shot.initial, 0.0, shot.span, tol);
    return terminal_value(problem, tr.final_state());
  } catch (const IntegrationFailure&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::vector<Bracket> default_brackets(const BvpSpec& problem) {
  switch (problem.kind) {
    case BvpKind::bratu: return {{0.0, 40.0}};
    case BvpKind::singular_linear: return {};  // linear: solved by a single secant step
    case BvpKind::falkner_skan: return {{-0.5, 2.0}};
  }
  return {};
}

std::vector<GridFunction> shoot_bvp(const BvpSpec& problem, std::vector<Bracket> brackets, double tol) {
  problem.validate();
  std::vector<double> slopes;
  if (problem.kind == BvpKind::singular_linear && brackets.empty()) {
    const double m0 = shooting_mismatch(problem, 0.0, tol);
    const double m1 = shooting_mismatch(problem, 1.0, tol);
    if (!std::isfinite(m0) || !std::isfinite(m1) || m1 == m0) {
      throw NoSolution("shoot_bvp: singular_linear shots are degenerate");
    }
    double s = -m0 / (m1 - m0);
    // One Newton-secant correction for roundoff.
    const double ms = shooting_mismatch(problem, s, tol);
    s -= ms / (m1 - m0);
    slopes.push_back(s);
  } else {
    if (brackets.empty()) brackets = default_brackets(problem);
    for (const auto& b : brackets) {
      const int samples = problem.kind == BvpKind::bratu ? 801 : 261;
      auto roots = find_roots([&](double s) { return shooting_mismatch(problem, s, tol); }, b.lo, b.hi, samples,
                              1e-13);
      slopes.insert(slopes.end(), roots.begin(), roots.end());
    }
    std::sort(slopes.begin(), slopes.end());
    slopes.erase(std::unique(slopes.begin(), slopes.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)); }),
                 slopes.end());
  }
  if (slopes.empty()) throw NoSolution("shoot_bvp: no sign change in any bracket");

  std::vector<GridFunction> out;
  for (double s : slopes) {
    const double far = kFalknerSkanFarField;
    const Shot shot = make_shot(problem, s, far);
    const auto tr = integrate_ivp(shot.rhs, shot.initial, 0.0, shot.span, tol);
    std::vector<double> grid(201);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = shot.span * static_cast<double>(i) / 200.0;
    grid.back() = shot.span;
    GridFunction g = tr.sample(0, grid);
    g.method = "shooting";
    g.tolerance = tol;
    g.info["slope"] = s;
    g.info["boundary_residual"] = terminal_value(problem, tr.final_state());
    if (problem.kind == BvpKind::falkner_skan) {
      g.info["fp_end"] = tr.final_state()[1];
      double far_slope = std::numeric_limits<double>::quiet_NaN();
      try {
        auto near = find_roots(
            [&](double x) { return shooting_mismatch(problem, x, tol, kFalknerSkanCheckField); }, s - 0.02,
            s + 0.02, 41, 1e-13);
        for (double r : near) {
          if (!std::isfinite(far_slope) || std::abs(r - s) < std::abs(far_slope - s)) far_slope = r;
        }
      } catch (const Error&) {
      }
      g.info["fpp0_far"] = far_slope;
    }
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

struct SingularModes {
  double m1, m2, c1, c2;
};

SingularModes singular_modes(const BvpSpec& p) {
  if (p.kind != BvpKind::singular_linear) throw InvalidProblem("exact_singular: needs a singular_linear problem");
  p.validate();
  const double d = std::sqrt(1.0 - 4.0 * p.eps);
  const double m1 = (-1.0 + d) / (2.0 * p.eps);
  const double m2 = (-1.0 - d) / (2.0 * p.eps);
  const double e1 = std::exp(m1);
  const double e2 = std::exp(m2);
  const double c1 = (p.right_value - p.left_value * e2) / (e1 - e2);
  const double c2 = p.left_value - c1;
  return {m1, m2, c1, c2};
}

}  // namespace

std::function<double(double)> exact_singular(const BvpSpec& problem) {
  const auto m = singular_modes(problem);
  return [m](double x) { return m.c1 * std::exp(m.m1 * x) + m.c2 * std::exp(m.m2 * x); };
}

double exact_singular_slope(const BvpSpec& problem) {
  const auto m = singular_modes(problem);
  return m.c1 * m.m1 + m.c2 * m.m2;
}

Trajectory wkb_reference(const WkbSpec& spec, double tol) {
  spec.validate();
  const double x0 = spec.x_lo;
  const double f0 = spec.F(x0);
  if (!(f0 > 0.0)) throw TurningPoint("wkb_reference: F(x_lo) is not positive");
  double df0 = 0.0;
  if (spec.dF) {
    df0 = spec.dF(x0);
  } else {
    const double h = 1e-5 * std::max(1.0, std::abs(x0));
    df0 = (spec.F(x0 + h) - spec.F(x0 - h)) / (2.0 * h);
  }
  const double y0 = std::pow(f0, -0.25);
  const double dy0 = -0.25 * std::pow(f0, -1.25) * df0;
  const auto F = spec.F;
  const double e2 = spec.eps * spec.eps;
  const Rhs rhs = [F, e2](double x, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -F(x) * y[0] / e2;
  };
  return integrate_ivp(rhs, {y0, dy0}, spec.x_lo, spec.x_hi, tol);
}

int bratu_solution_count(double lambda, double tol) {
  BvpSpec p;
  p.kind = BvpKind::bratu;
  p.lambda = lambda;
  try {
    return static_cast<int>(shoot_bvp(p, {}, tol).size());
  } catch (const NoSolution&) {
    return 0;
  }
}

FoldInterval bratu_fold(double lo, double hi, double width, double tol) {
  if (bratu_solution_count(lo, tol) < 2) throw NoSolution("bratu_fold: fewer than two solutions at lower end");
  if (bratu_solution_count(hi, tol) != 0) throw NoSolution("bratu_fold: solutions persist at upper end");
  while (hi - lo > width) {
    const double mid = 0.5 * (lo + hi);
    if (bratu_solution_count(mid, tol) >= 2) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace asymp::oracle
