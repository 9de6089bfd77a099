#pragma once

#include <functional>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "asymp/grid_function.hpp"
#include "asymp/trig_poly.hpp"

namespace asymp {

enum class OscillatorKind { duffing_cubic, duffing_quintic, van_der_pol, vdp_duffing, pendulum, custom };

/// u'' + linear u + quadratic u^2 + cubic u^3 + quintic u^5 - vdp (1 - u^2) u'
///     + damping u' = forcing cos(forcing_frequency t)
///
/// The pendulum keeps its exact nonlinearity sin(u) in residuals and oracle
/// runs; cubic_coeff = -1/6 is the truncation the asymptotic methods use.
struct OscillatorSpec {
  OscillatorKind kind = OscillatorKind::custom;
  double linear_coeff = 1.0;
  double quadratic_coeff = 0.0;
  double cubic_coeff = 0.0;
  double quintic_coeff = 0.0;
  double vdp_coeff = 0.0;
  double eps = 0.0;
  /// Leading-order solution A cos(wt) + B sin(wt).
  double amplitude = 1.0;
  double sine_amplitude = 0.0;
  double damping = 0.0;
  double forcing = 0.0;
  double forcing_frequency = 1.0;

  double total_amplitude() const;
  bool conservative() const { return vdp_coeff == 0.0 && damping == 0.0 && forcing == 0.0; }
  void validate() const;

  friend bool operator==(const OscillatorSpec&, const OscillatorSpec&) = default;
};

enum class BvpKind { bratu, singular_linear, falkner_skan };

/// Two-point problems:
///   bratu            u'' + lambda e^u = 0,            u(0) = u(1) = 0
///   singular_linear  eps y'' + y' + y = 0,             y(0) = left, y(1) = right
///   falkner_skan     f''' + f f'' + beta (1 - f'^2) = 0, f(0) = f'(0) = 0, f'(inf) = 1
struct BvpSpec {
  BvpKind kind = BvpKind::bratu;
  double lambda = 0.0;
  double eps = 0.0;
  double left_value = 0.0;
  double right_value = 0.0;
  double beta_fs = 0.0;

  void validate() const;

  friend bool operator==(const BvpSpec&, const BvpSpec&) = default;
};

/// eps^2 y'' + F(x) y = 0 on [x_lo, x_hi] with F > 0 (no turning points).
struct WkbSpec {
  std::function<double(double)> F;
  std::function<double(double)> dF;
  double eps = 0.01;
  double x_lo = 0.0;
  double x_hi = 1.0;
  /// Human-readable form of F for reports.
  std::string description;

  void validate() const;

  /// F(x) = (a + b x)^2.
  static WkbSpec squared_linear(double a, double b, double eps, double x_lo, double x_hi);
};

/// Radial Schroedinger-Newton pair  Lap S = -S U,  Lap U = -S^2.
struct SNewtonSpec {
  double s0 = 1.0;
  double u0 = 1.0;
  double r_max = 2.0;
  int grid_points = 512;
  /// Relaxation factor of the Picard sweep, in (0, 1].
  double relaxation = 1.0;

  void validate() const;

  friend bool operator==(const SNewtonSpec&, const SNewtonSpec&) = default;
};

/// KdV traveling wave  -c u - 3 u^2 + u'' = 0  in xi = x - c t - offset.
struct TravelingWaveSpec {
  double wave_speed = 1.0;
  double offset = 0.0;

  void validate() const;

  friend bool operator==(const TravelingWaveSpec&, const TravelingWaveSpec&) = default;
};

/// Lambert equation  y'' + (k^2 / n) y - (1 - n) y'^2 / y = 0  (verification target).
struct LambertSpec {
  double k = 1.0;
  double n = 1.0;

  void validate() const;

  friend bool operator==(const LambertSpec&, const LambertSpec&) = default;
};

using ProblemSpec = std::variant<OscillatorSpec, BvpSpec, WkbSpec, SNewtonSpec, TravelingWaveSpec, LambertSpec>;
using ParamMap = std::map<std::string, double>;

/// Canonical problem identifiers accepted by make_problem.
const std::vector<std::string>& problem_names();

/// Build and validate a canonical problem.
///
/// Throws InvalidProblem on unknown names, missing required parameters,
/// unknown parameter keys, or violated invariants. Nonzero damping/forcing
/// is accepted but reported through `warnings`.
ProblemSpec make_problem(std::string_view name, const ParamMap& params,
                         std::vector<std::string>* warnings = nullptr);

/// Name under which make_problem would have produced `spec`.
std::string problem_name(const ProblemSpec& spec);

/// A candidate solution with up to three derivatives.
struct Candidate {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  /// Optional; centered differences of d2 are used when empty.
  std::function<double(double)> d3;

  static Candidate from_trig(const TrigPoly& u);
  /// Derivatives by centered finite differences with step h.
  static Candidate from_function(std::function<double(double)> f, double h = 1e-4);
};

/// Pointwise left-hand side of the governing equation at each grid point.
///
/// Throws DomainError for points outside the problem domain and
/// CapabilityError for the coupled Schroedinger-Newton pair (see
/// snewton_fd_residual).
GridFunction residual(const ProblemSpec& problem, const Candidate& candidate, std::span<const double> grid);

/// Sections of a flat `key = value` configuration file.
struct ConfigSection {
  std::string name;
  std::map<std::string, std::string> values;
};

/// Parse `[section]` blocks of `key = value` lines; lines starting with `#` or
/// `;` are comments.
std::vector<ConfigSection> parse_config(std::istream& in);

/// Problem blocks are sections named `problem` or `problem.<label>` with a
/// `name = <identifier>` entry; every other entry is a numeric parameter.
std::vector<std::pair<std::string, ProblemSpec>> load_problems(std::istream& in);

ProblemSpec problem_from_section(const ConfigSection& section);

}  // namespace asymp
