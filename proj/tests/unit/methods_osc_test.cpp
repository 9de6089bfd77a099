#include <cmath>
#include <numbers>

#include "doctest.h"

#include "asymp/errors.hpp"
#include "asymp/methods_osc.hpp"
#include "asymp/oracle.hpp"

using namespace asymp;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

OscillatorSpec osc(const std::string& name, const ParamMap& p) { return std::get<OscillatorSpec>(make_problem(name, p)); }

}  // namespace

TEST_CASE("vim first iterate") {
  const double eps = 0.1;
  const double A = 1.0;
  const auto s = vim_iterate(osc("duffing_cubic", {{"eps", eps}, {"A", A}}), TrigPoly::cosine(1.0, A), 1.0);
  const double w2 = 1.0 + 0.75 * eps * A * A;
  const double c3 = eps * A * A * A / (32.0 * w2);
  CHECK(s.frequency.omega_squared() == doctest::Approx(w2).epsilon(1e-15));
  CHECK(s.solution.coefficient(0, 3, Kind::cosine) == doctest::Approx(c3).epsilon(1e-14));
  CHECK(s.solution.coefficient(0, 1, Kind::cosine) == doctest::Approx(A - c3).epsilon(1e-14));
  CHECK(s.solution(0.0) == doctest::Approx(A));
  CHECK(s.frequency.method == MethodTag::vim);
  CHECK(detect_secular(s.solution).empty());
}

TEST_CASE("vim with no perturbation is a fixed point") {
  const auto u0 = TrigPoly::cosine(1.0, 0.8);
  const auto s = vim_iterate(osc("duffing_cubic", {{"eps", 0.0}, {"A", 0.8}}), u0, 1.0);
  CHECK(s.solution == u0);
  CHECK(s.frequency.omega == 1.0);
  CHECK(s.residual_norm == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("vim residual decreases") {
  const auto spec = osc("duffing_cubic", {{"eps", 0.2}, {"A", 0.8}});
  const auto u0 = TrigPoly::cosine(1.0, 0.8);
  CHECK(vim_iterate(spec, u0, 1.0).residual_norm < oscillator_residual_norm(spec, u0));

  for (double eps : {0.05, 0.2, 0.5}) {
    for (double A : {0.4, 0.7, 1.0}) {
      if (eps * A * A > 0.5) continue;
      const auto p = osc("duffing_cubic", {{"eps", eps}, {"A", A}});
      const auto u = TrigPoly::cosine(1.0, A);
      CHECK(vim_iterate(p, u, 1.0).residual_norm <= oscillator_residual_norm(p, u));
    }
  }
}

TEST_CASE("vim errors") {
  const auto damped = osc("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}, {"delta", 0.1}});
  CHECK_THROWS_AS(vim_iterate(damped, TrigPoly::cosine(1.0, 1.0), 1.0), UnsupportedMethod);
  const auto spec = osc("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}});
  CHECK_THROWS_AS(vim_iterate(spec, TrigPoly::cosine(1.0, 1.0), -1.0), InvalidProblem);
  CHECK_THROWS_AS(vim_iterate(spec, TrigPoly(1.0, {{1.0, 1, 1, Kind::sine}}), 1.0), CapabilityError);
  CHECK_THROWS_AS(vim_solve(spec, 0), UnsupportedMethod);
  CHECK_THROWS_AS(vim_solve(spec, 5), UnsupportedMethod);
}

TEST_CASE("frequency consistency between vim and parameter expansion") {
  for (double eps : {0.01, 0.1, 0.3}) {
    for (double A : {0.5, 1.0, 1.5}) {
      const auto spec = osc("duffing_cubic", {{"eps", eps}, {"A", A}});
      const double w2 = 1.0 + 0.75 * eps * A * A;
      CHECK(std::abs(vim_solve(spec, 1).frequency.omega_squared() - w2) <= 1e-12);
      CHECK(std::abs(lp_parameter_expansion(spec, 1).frequency.omega_squared() - w2) <= 1e-12);
    }
  }
}

TEST_CASE("parameter expansion examples") {
  const auto vd = lp_parameter_expansion(osc("vdp_duffing", {{"alpha", 1.0}, {"A", 1.0}}), 1);
  CHECK(vd.frequency.omega == doctest::Approx(std::sqrt(1.75)).epsilon(1e-14));

  CHECK(lp_parameter_expansion(osc("duffing_cubic", {{"eps", 0.0}, {"A", 1.0}}), 2).frequency.omega == 1.0);
  CHECK(lp_parameter_expansion(osc("vdp_duffing", {{"alpha", 0.0}, {"A", 1.0}}), 1).frequency.omega == 1.0);

  const auto pend = osc("pendulum", {{"A", 0.5}});
  const double w = lp_parameter_expansion(pend, 1).frequency.omega;
  CHECK(w == doctest::Approx(std::sqrt(1.0 - 0.25 / 8.0)).epsilon(1e-12));
  const double T = oracle::oscillator_period(pend, 0.5);
  CHECK(std::abs(kTwoPi / w - T) / T < 0.005);

  CHECK_THROWS_AS(lp_parameter_expansion(osc("vdp_duffing", {{"alpha", 1.0}, {"A", 1.0}, {"mu", 0.1}}), 1),
                  UnsupportedMethod);
  CHECK_THROWS_AS(lp_parameter_expansion(osc("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}), 3), UnsupportedMethod);
}

TEST_CASE("second-order expansions track the oracle more closely") {
  const auto spec = osc("duffing_cubic", {{"eps", 0.3}, {"A", 1.0}});
  const double T = oracle::oscillator_period(spec, 1.0);
  const double e1 = std::abs(kTwoPi / lp_parameter_expansion(spec, 1).frequency.omega - T);
  const double e2 = std::abs(kTwoPi / lp_parameter_expansion(spec, 2).frequency.omega - T);
  CHECK(e2 < e1);
}

TEST_CASE("hpm quintic") {
  const auto s = hpm_quintic(osc("duffing_quintic", {{"eps", 0.1}, {"A", 1.0}}), 1.0);
  CHECK(s.frequency.omega == doctest::Approx(std::sqrt(1.0625)).epsilon(1e-14));

  const auto flat = hpm_quintic(osc("duffing_quintic", {{"eps", 0.0}, {"A", 2.0}}), 2.0);
  CHECK(flat.frequency.omega == 1.0);
  CHECK(flat.solution == TrigPoly::cosine(1.0, 2.0));

  const auto spec = osc("duffing_quintic", {{"eps", 0.1}, {"A", 1.0}});
  const double T = oracle::oscillator_period(spec, 1.0);
  CHECK(std::abs(kTwoPi / s.frequency.omega - T) / T < 0.02);

  CHECK_THROWS_AS(hpm_quintic(osc("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}), 1.0), UnsupportedMethod);
  CHECK_THROWS_AS(hpm_quintic(spec, -1.0), InvalidProblem);
}

TEST_CASE("limit cycle stationarity") {
  CHECK(limit_cycle_alpha(0.1, 2.0, 1.0) == 0.0);
  CHECK(limit_cycle_alpha(0.0, 1.3, 0.7) == 0.0);
  CHECK(std::abs(limit_cycle_alpha(0.1, 1.0, 1.0) + 0.003811) <= 1e-6);
  for (double eps = 0.05; eps <= 0.5; eps += 0.05) {
    for (double w = 0.5; w <= 2.0; w += 0.25) {
      CHECK(limit_cycle_alpha(eps, 2.0, w) == 0.0);
      CHECK(limit_cycle_alpha(eps, 1.5, w) != 0.0);
    }
  }
  CHECK_THROWS_AS(limit_cycle_alpha(0.1, -1.0, 1.0), InvalidProblem);
  CHECK_THROWS_AS(limit_cycle_alpha(2.0 * std::numbers::pi, 1.0, 1.0), SingularParameter);

  const auto est = limit_cycle_solution(osc("van_der_pol", {{"eps", 0.1}}));
  CHECK(est.cycle.solution.coefficient(0, 1, Kind::cosine) == doctest::Approx(2.0));
  CHECK_THROWS_AS(limit_cycle_solution(osc("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}})), UnsupportedMethod);
}

TEST_CASE("property: every approximate solution is secular-free") {
  std::vector<ApproxSolution> all;
  for (double eps : {0.0, 0.05, 0.2, 0.5}) {
    for (double A : {0.5, 1.0, 1.5}) {
      const auto d = osc("duffing_cubic", {{"eps", eps}, {"A", A}});
      for (unsigned k = 1; k <= 4; ++k) all.push_back(vim_solve(d, k));
      all.push_back(lp_parameter_expansion(d, 1));
      all.push_back(lp_parameter_expansion(d, 2, FrequencyExpansion::omega));
      const auto q = osc("duffing_quintic", {{"eps", eps}, {"A", A}});
      all.push_back(hpm_quintic(q, A));
      all.push_back(vim_solve(q, 3));
    }
    all.push_back(lp_parameter_expansion(osc("vdp_duffing", {{"alpha", eps}, {"A", 1.0}, {"B", 0.5}}), 2));
  }
  for (const auto& s : all) CHECK(detect_secular(s.solution).empty());
}

TEST_CASE("property: small-eps periods agree with the oracle") {
  for (double eps : {0.05, 0.2}) {
    for (double A : {0.5, 1.0}) {
      if (eps * A * A > 0.2) continue;
      const auto d = osc("duffing_cubic", {{"eps", eps}, {"A", A}});
      const double T = oracle::oscillator_period(d, A);
      for (const auto& s : {vim_solve(d, 1), vim_solve(d, 2), lp_parameter_expansion(d, 1), lp_parameter_expansion(d, 2)}) {
        CHECK(std::abs(kTwoPi / s.frequency.omega - T) / T < 0.02);
      }
      const auto q = osc("duffing_quintic", {{"eps", eps}, {"A", A}});
      const double Tq = oracle::oscillator_period(q, A);
      CHECK(std::abs(kTwoPi / hpm_quintic(q, A).frequency.omega - Tq) / Tq < 0.02);
    }
  }
}
