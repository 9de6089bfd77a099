#include "asymp/methods_osc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "asymp/errors.hpp"

namespace asymp {

namespace {

constexpr double kPi = std::numbers::pi;

// Coefficient per unit eps, with the family's natural sign when eps = 0.
double per_eps(double coeff, double eps, double unit) { return eps != 0.0 ? coeff / eps : unit; }

double cubic_unit(const OscillatorSpec& p) {
  switch (p.kind) {
    case OscillatorKind::duffing_cubic:
    case OscillatorKind::vdp_duffing: return 1.0;
    case OscillatorKind::pendulum: return -1.0;
    default: return 0.0;
  }
}

double quintic_unit(const OscillatorSpec& p) { return p.kind == OscillatorKind::duffing_quintic ? 1.0 : 0.0; }

TrigPoly nonlinear_part(const OscillatorSpec& p, const TrigPoly& u) {
  TrigPoly out(u.base_frequency());
  if (p.quadratic_coeff != 0.0) out = out + p.quadratic_coeff * multiply(u, u);
  if (p.cubic_coeff != 0.0) out = out + p.cubic_coeff * power(u, 3);
  if (p.quintic_coeff != 0.0) out = out + p.quintic_coeff * power(u, 5);
  return out;
}

TrigPoly drop_resonant(const TrigPoly& p) {
  std::vector<TrigTerm> kept;
  for (const auto& t : p.terms()) {
    if (!(t.t_power == 0 && t.harmonic == 1)) kept.push_back(t);
  }
  return TrigPoly(p.base_frequency(), std::move(kept));
}

void require_conservative(const OscillatorSpec& p, const char* who) {
  if (!p.conservative()) {
    throw UnsupportedMethod(std::string(who) +
                            ": van der Pol, damped or forced problems are not conservative");
  }
}

void require_secular_free(const ApproxSolution& s, const char* who) {
  if (!detect_secular(s.solution).empty()) {
    throw NumericError(std::string(who) + ": produced a secular term");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(MethodTag tag) {
  switch (tag) {
    case MethodTag::vim: return "vim";
    case MethodTag::lindstedt_poincare: return "lindstedt_poincare";
    case MethodTag::parameter_expansion: return "parameter_expansion";
    case MethodTag::hpm: return "hpm";
    case MethodTag::limit_cycle: return "limit_cycle";
  }
  return "unknown";
}

double FrequencyResult::omega_from_expansion(double eps) const {
  if (expansion.empty()) return omega;
  double s = 0.0;
  for (const auto& term : expansion) s += term.coeff * std::pow(eps, term.power);
  return expands_omega_squared ? std::sqrt(s) : s;
}

double oscillator_residual_norm(const OscillatorSpec& problem, const TrigPoly& u) {
  const double w = u.base_frequency();
  const double period = 2.0 * kPi / w;
  constexpr int kPoints = 400;
  std::vector<double> grid(kPoints);
  for (int i = 0; i < kPoints; ++i) grid[i] = period * i / kPoints;
  const auto r = residual(ProblemSpec{problem}, Candidate::from_trig(u), grid);
  return r.max_abs();
}

ApproxSolution vim_iterate(const OscillatorSpec& problem, const TrigPoly& u_n, double omega) {
  require_conservative(problem, "vim_iterate");
  problem.validate();
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidProblem("vim_iterate: omega must be positive");
  if (!detect_secular(u_n).empty()) throw CapabilityError("vim_iterate: u_n contains secular terms");

  TrigPoly u = u_n.with_base_frequency(omega);
  const TrigPoly restoring = problem.linear_coeff * u + nonlinear_part(problem, u);

  const double a1 = u.coefficient(0, 1, Kind::cosine);
  const double s1 = u.coefficient(0, 1, Kind::sine);
  const double bc = restoring.coefficient(0, 1, Kind::cosine);
  const double bs = restoring.coefficient(0, 1, Kind::sine);
  const double scale = std::max({1.0, std::abs(bc), std::abs(bs), omega * omega * std::hypot(a1, s1)});

  double w2 = omega * omega;
  const double resonant = std::abs(bc - w2 * a1) + std::abs(bs - w2 * s1);
  if (resonant > 1e-13 * scale) {
    const double norm2 = a1 * a1 + s1 * s1;
    if (norm2 == 0.0) throw ResonanceError("vim_iterate: no first harmonic available to absorb the resonant term");
    w2 = (a1 * bc + s1 * bs) / norm2;
    if (!(w2 > 0.0)) throw NumericError("vim_iterate: no real frequency cancels the resonant term");
    if (std::abs(bc - w2 * a1) + std::abs(bs - w2 * s1) > 1e-10 * scale) {
      throw ResonanceError("vim_iterate: resonant sine and cosine parts cannot vanish together");
    }
    omega = std::sqrt(w2);
    u = u.with_base_frequency(omega);
  }

  const TrigPoly r = differentiate(u, 2) + restoring.with_base_frequency(omega);
  ApproxSolution out;
  out.solution = u + integrate_sine_kernel(drop_resonant(r));
  out.order = 1;

  FrequencyResult& f = out.frequency;
  f.omega = omega;
  f.method = MethodTag::vim;
  f.expands_omega_squared = true;
  {
    std::ostringstream os;
    os << "w^2 * (" << fmt(a1) << ") = " << fmt(bc) << " => w^2 = " << fmt(w2);
    f.secular_condition = os.str();
  }
  const auto terms = u_n.terms();
  if (terms.size() == 1 && terms[0].harmonic == 1 && terms[0].kind == Kind::cosine) {
    const double A = terms[0].coeff;
    const double c1 = 0.75 * A * A * per_eps(problem.cubic_coeff, problem.eps, cubic_unit(problem)) +
                      0.625 * std::pow(A, 4) * per_eps(problem.quintic_coeff, problem.eps, quintic_unit(problem));
    f.expansion = {{0, problem.linear_coeff}, {1, c1}};
  }

  require_secular_free(out, "vim_iterate");
  out.residual_norm = oscillator_residual_norm(problem, out.solution);
  return out;
}

ApproxSolution vim_solve(const OscillatorSpec& problem, unsigned iterations) {
  if (iterations < 1 || iterations > 4) throw UnsupportedMethod("vim_solve: iterations must be 1..4");
  if (!(problem.linear_coeff > 0.0)) throw UnsupportedMethod("vim_solve: needs a positive linear coefficient");
  const double w0 = std::sqrt(problem.linear_coeff);
  TrigPoly u = TrigPoly::cosine(w0, problem.amplitude) + TrigPoly::sine(w0, problem.sine_amplitude);
  ApproxSolution s;
  double omega = w0;
  for (unsigned k = 0; k < iterations; ++k) {
    s = vim_iterate(problem, u, omega);
    u = s.solution;
    omega = s.frequency.omega;
  }
  s.order = iterations;
  return s;
}

ApproxSolution lp_parameter_expansion(const OscillatorSpec& problem, unsigned order, FrequencyExpansion mode) {
  problem.validate();
  if (order < 1 || order > 2) throw UnsupportedMethod("lp_parameter_expansion: order must be 1 or 2");
  if (problem.kind == OscillatorKind::van_der_pol || problem.kind == OscillatorKind::duffing_quintic) {
    throw UnsupportedMethod("lp_parameter_expansion: problem family not supported");
  }
  if (problem.vdp_coeff != 0.0) {
    throw UnsupportedMethod("lp_parameter_expansion: secular terms from mu != 0 are not cancelled");
  }
  require_conservative(problem, "lp_parameter_expansion");
  if (problem.linear_coeff != 1.0 || problem.quadratic_coeff != 0.0 || problem.quintic_coeff != 0.0) {
    throw UnsupportedMethod("lp_parameter_expansion: only u'' + u + k u^3 = 0 is expanded");
  }

  const double kappa = problem.cubic_coeff;
  const double R = problem.total_amplitude();
  const double phi = std::atan2(problem.sine_amplitude, problem.amplitude);

  // Work in theta = omega t with base frequency 1.
  std::vector<TrigPoly> u{TrigPoly::cosine(1.0, R)};
  std::vector<double> w{0.0};
  auto cube_coeff = [&u](unsigned m) {
    TrigPoly c(1.0);
    for (unsigned i = 0; i <= m; ++i)
      for (unsigned j = 0; i + j <= m; ++j) c = c + multiply(multiply(u[i], u[j]), u[m - i - j]);
    return c;
  };
  for (unsigned k = 1; k <= order; ++k) {
    TrigPoly rhs = -cube_coeff(k - 1);
    for (unsigned j = 1; j < k; ++j) rhs = rhs - w[j] * differentiate(u[k - j], 2);
    const double wk = R == 0.0 ? 0.0 : -rhs.coefficient(0, 1, Kind::cosine) / R;
    if (std::abs(rhs.coefficient(0, 1, Kind::sine)) > 1e-12 * std::max(1.0, rhs.scale())) {
      throw ResonanceError("lp_parameter_expansion: resonant sine term cannot be cancelled");
    }
    w.push_back(wk);
    u.push_back(integrate_sine_kernel(-drop_resonant(rhs)));
  }

  const double r = per_eps(kappa, problem.eps, cubic_unit(problem));
  FrequencyResult f;
  f.method = mode == FrequencyExpansion::omega_squared ? MethodTag::parameter_expansion
                                                        : MethodTag::lindstedt_poincare;
  f.expands_omega_squared = mode == FrequencyExpansion::omega_squared;
  if (mode == FrequencyExpansion::omega_squared) {
    double w2 = 1.0;
    f.expansion = {{0, 1.0}};
    for (unsigned k = 1; k <= order; ++k) {
      w2 += w[k] * std::pow(kappa, k);
      f.expansion.push_back({static_cast<int>(k), w[k] * std::pow(r, k)});
    }
    if (!(w2 > 0.0)) throw NumericError("lp_parameter_expansion: omega^2 series is not positive");
    f.omega = std::sqrt(w2);
  } else {
    const double o1 = 0.5 * w[1];
    double om = 1.0 + o1 * kappa;
    f.expansion = {{0, 1.0}, {1, o1 * r}};
    if (order >= 2) {
      const double o2 = 0.5 * w[2] - 0.125 * w[1] * w[1];
      om += o2 * kappa * kappa;
      f.expansion.push_back({2, o2 * r * r});
    }
    if (!(om > 0.0)) throw NumericError("lp_parameter_expansion: omega series is not positive");
    f.omega = om;
  }
  {
    std::ostringstream os;
    os << "first-harmonic coefficients cancelled with w1 = " << fmt(w[1]);
    if (order >= 2) os << ", w2 = " << fmt(w[2]);
    os << " (omega^2 = 1 + w1 k + w2 k^2)";
    f.secular_condition = os.str();
  }

  // Map theta = omega t - phi back to t.
  std::vector<TrigTerm> terms;
  for (unsigned k = 0; k <= order; ++k) {
    const double kk = std::pow(kappa, k);
    for (const auto& t : u[k].terms()) {
      const double c = kk * t.coeff;
      const double n = t.harmonic;
      const double cn = std::cos(n * phi);
      const double sn = std::sin(n * phi);
      if (t.kind == Kind::cosine) {
        terms.push_back({c * cn, 0, t.harmonic, Kind::cosine});
        terms.push_back({c * sn, 0, t.harmonic, Kind::sine});
      } else {
        terms.push_back({c * cn, 0, t.harmonic, Kind::sine});
        terms.push_back({-c * sn, 0, t.harmonic, Kind::cosine});
      }
    }
  }

  ApproxSolution out;
  out.solution = TrigPoly(f.omega, std::move(terms));
  out.frequency = std::move(f);
  out.order = order;
  require_secular_free(out, "lp_parameter_expansion");
  out.residual_norm = oscillator_residual_norm(problem, out.solution);
  return out;
}

ApproxSolution hpm_quintic(const OscillatorSpec& problem, double A) {
  problem.validate();
  require_conservative(problem, "hpm_quintic");
  if (problem.quadratic_coeff != 0.0 || problem.cubic_coeff != 0.0) {
    throw UnsupportedMethod("hpm_quintic: only the quintic nonlinearity is supported");
  }
  if (!(A > 0.0) || !std::isfinite(A)) throw InvalidProblem("hpm_quintic: amplitude must be positive");

  const double lin = problem.linear_coeff;
  const double q = problem.quintic_coeff;
  const double a2 = lin + 0.625 * q * std::pow(A, 4);
  if (!(a2 > 0.0)) throw NumericError("hpm_quintic: alpha^2 is not positive");
  const double alpha = std::sqrt(a2);

  const TrigPoly v0 = TrigPoly::cosine(alpha, A);
  std::vector<TrigTerm> v1;
  if (q != 0.0) {
    for (const auto& t : power(v0, 5).terms()) {
      if (t.harmonic == 1) continue;  // removed by the choice of alpha
      const double n = t.harmonic;
      const double denom = n * n * a2 - lin;
      if (std::abs(denom) <= 1e-9) {
        throw ResonanceError("hpm_quintic: harmonic " + std::to_string(t.harmonic) + " is resonant");
      }
      v1.push_back({q * t.coeff / denom, 0, t.harmonic, t.kind});
    }
  }

  ApproxSolution out;
  out.solution = v0 + TrigPoly(alpha, std::move(v1));
  out.order = 1;
  FrequencyResult& f = out.frequency;
  f.omega = alpha;
  f.method = MethodTag::hpm;
  f.expands_omega_squared = true;
  f.expansion = {{0, lin},
                 {1, 0.625 * std::pow(A, 4) * per_eps(q, problem.eps, quintic_unit(problem))}};
  f.secular_condition = "A (-alpha^2 + " + fmt(lin) + " + 5/8 * " + fmt(q) + " * A^4) cos(alpha t) = 0";
  require_secular_free(out, "hpm_quintic");
  out.residual_norm = oscillator_residual_norm(problem, out.solution);
  return out;
}

double limit_cycle_alpha(double eps, double A, double omega) {
  if (!(A > 0.0) || !(omega > 0.0) || !std::isfinite(eps) || !std::isfinite(A) || !std::isfinite(omega)) {
    throw InvalidProblem("limit_cycle_alpha: A and omega must be positive and finite");
  }
  const double denom = 2.0 * kPi * omega - eps * A * A;
  if (std::abs(denom) <= 1e-9) throw SingularParameter("limit_cycle_alpha: 2 pi omega - eps A^2 vanishes");
  return eps * eps * (A * A - 4.0) * omega * kPi / (4.0 * denom);
}

LimitCycleEstimate limit_cycle_solution(const OscillatorSpec& problem) {
  problem.validate();
  if (!(problem.vdp_coeff > 0.0)) throw UnsupportedMethod("limit_cycle: needs a van der Pol term");
  if (problem.linear_coeff != 1.0 || problem.quadratic_coeff != 0.0 || problem.cubic_coeff != 0.0 ||
      problem.quintic_coeff != 0.0 || problem.damping != 0.0 || problem.forcing != 0.0) {
    throw UnsupportedMethod("limit_cycle: only u'' + u - eps (1 - u^2) u' = 0 is supported");
  }
  LimitCycleEstimate est;
  est.alpha = limit_cycle_alpha(problem.vdp_coeff, problem.total_amplitude(), 1.0);
  ApproxSolution& c = est.cycle;
  c.solution = TrigPoly::cosine(1.0, 2.0);
  c.order = 0;
  c.frequency.omega = 1.0;
  c.frequency.method = MethodTag::limit_cycle;
  c.frequency.expands_omega_squared = true;
  c.frequency.expansion = {{0, 1.0}};
  c.frequency.secular_condition = "stationary amplitude from the A^2 - 4 factor: A = 2";
  c.residual_norm = oscillator_residual_norm(problem, c.solution);
  return est;
}

}  // namespace asymp
