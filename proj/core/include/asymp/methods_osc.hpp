#pragma once

#include <string>
#include <vector>

#include "asymp/problems.hpp"
#include "asymp/trig_poly.hpp"

namespace asymp {

enum class MethodTag { vim, lindstedt_poincare, parameter_expansion, hpm, limit_cycle };

std::string to_string(MethodTag tag);

/// One term coeff * eps^power of a frequency series.
struct ExpansionTerm {
  int power = 0;
  double coeff = 0.0;

  friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

struct FrequencyResult {
  double omega = 1.0;
  /// Series in the problem's eps; empty when the method gives no series.
  std::vector<ExpansionTerm> expansion;
  /// True when `expansion` is a series for omega^2 rather than omega.
  bool expands_omega_squared = true;
  MethodTag method = MethodTag::vim;
  std::string secular_condition;

  double omega_squared() const { return omega * omega; }
  /// omega reconstructed from the series at the given eps.
  double omega_from_expansion(double eps) const;
};

struct ApproxSolution {
  TrigPoly solution{1.0};
  FrequencyResult frequency;
  unsigned order = 0;
  double residual_norm = 0.0;
};

/// max |residual| of the governing equation over one period of u, sampled at
/// 400 uniform points. The pendulum is measured with its exact sin(u).
double oscillator_residual_norm(const OscillatorSpec& problem, const TrigPoly& u);

/// One variational iteration u_{n+1} = u_n + integral of the sine-kernel
/// multiplier against the residual of u_n.
///
/// The base frequency is first re-solved so the resonant first-harmonic part
/// of the residual vanishes; the result is expressed over that frequency.
/// Throws UnsupportedMethod for damped, forced or van der Pol problems.
ApproxSolution vim_iterate(const OscillatorSpec& problem, const TrigPoly& u_n, double omega);

/// `iterations` VIM steps (1 to 4) from A cos(wt) + B sin(wt), w = sqrt(linear).
ApproxSolution vim_solve(const OscillatorSpec& problem, unsigned iterations = 1);

enum class FrequencyExpansion {
  omega_squared,  ///< series for omega^2, the parameter-expansion variant
  omega,          ///< classic Lindstedt-Poincare series for omega
};

/// Lindstedt-Poincare / parameter expansion of u'' + u + k u^3 = 0 to order 1
/// or 2 in k.
///
/// Supports duffing_cubic, pendulum (cubic truncation) and vdp_duffing with
/// mu = 0. Throws UnsupportedMethod otherwise.
ApproxSolution lp_parameter_expansion(const OscillatorSpec& problem, unsigned order,
                                      FrequencyExpansion mode = FrequencyExpansion::omega_squared);

/// First-order homotopy perturbation solution of u'' + u + eps u^5 = 0.
///
/// alpha^2 = 1 + (5/8) eps A^4; v1 holds only the cos 3at and cos 5at
/// harmonics. Throws ResonanceError if a denominator n^2 alpha^2 - 1 is
/// within 1e-9 of zero.
ApproxSolution hpm_quintic(const OscillatorSpec& problem, double A);

/// Growth exponent of the amplitude envelope a(t) ~ A e^{alpha t} near the
/// van der Pol limit cycle. Throws SingularParameter when
/// |2 pi omega - eps A^2| <= 1e-9.
double limit_cycle_alpha(double eps, double A, double omega);

struct LimitCycleEstimate {
  /// Envelope growth exponent at the problem's starting amplitude.
  double alpha = 0.0;
  /// Leading-order stationary orbit 2 cos t.
  ApproxSolution cycle;
};

/// Limit-cycle estimate for a van der Pol problem (vdp_coeff = eps > 0).
LimitCycleEstimate limit_cycle_solution(const OscillatorSpec& problem);

}  // namespace asymp
