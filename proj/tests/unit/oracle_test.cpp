#include <cmath>
#include <numbers>

#include "doctest.h"

#include "asymp/errors.hpp"
#include "asymp/oracle.hpp"

using namespace asymp;
using namespace asymp::oracle;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

OscillatorSpec osc(const std::string& name, const ParamMap& p) { return std::get<OscillatorSpec>(make_problem(name, p)); }
BvpSpec bvp(const std::string& name, const ParamMap& p) { return std::get<BvpSpec>(make_problem(name, p)); }

}  // namespace

TEST_CASE("harmonic rotation") {
  const auto traj = integrate_ivp(oscillator_rhs(osc("duffing_cubic", {{"eps", 0.0}, {"A", 1.0}})), {1.0, 0.0}, 0.0,
                                  kTwoPi, 1e-10);
  CHECK(std::abs(traj.final_state()[0] - 1.0) < 1e-8);
  CHECK(std::abs(traj.final_state()[1]) < 1e-8);
  CHECK(traj.at(std::numbers::pi / 2.0, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));
  CHECK(traj.end() == kTwoPi);
}

TEST_CASE("duffing energy is conserved") {
  const auto spec = osc("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}});
  const auto traj = integrate_ivp(oscillator_rhs(spec), {1.0, 0.0}, 0.0, 20.0 * 6.06, 1e-10);
  const auto energy = [](const State& y) { return 0.5 * y[1] * y[1] + 0.5 * y[0] * y[0] + 0.025 * std::pow(y[0], 4); };
  const double e0 = energy(traj.state(0));
  double drift = 0.0;
  for (std::size_t i = 0; i <= traj.steps(); ++i) drift = std::max(drift, std::abs(energy(traj.state(i)) - e0));
  CHECK(drift < 1e-8);
}

TEST_CASE("singular problem as an initial value problem") {
  const auto spec = bvp("singular_linear", {{"eps", 0.05}});
  const double eps = spec.eps;
  const Rhs rhs = [eps](double, std::span<const double> y, std::span<double> dy) {
    dy[0] = y[1];
    dy[1] = -(y[1] + y[0]) / eps;
  };
  const auto traj = integrate_ivp(rhs, {spec.left_value, exact_singular_slope(spec)}, 0.0, 1.0, 1e-11);
  CHECK(std::abs(traj.final_state()[0] - spec.right_value) < 1e-7);
  const auto exact = exact_singular(spec);
  CHECK(std::abs(traj.at(0.3, 0) - exact(0.3)) < 1e-7);
}

TEST_CASE("halving the tolerance does not increase the endpoint error") {
  const auto rhs = oscillator_rhs(osc("duffing_cubic", {{"eps", 0.0}, {"A", 1.0}}));
  double previous = 1.0;
  for (double tol : {1e-6, 5e-7, 2.5e-7, 1.25e-7}) {
    const auto t = integrate_ivp(rhs, {1.0, 0.0}, 0.0, 10.0 * kTwoPi, tol);
    const double err = std::abs(t.final_state()[0] - 1.0);
    CHECK(err <= previous);
    previous = err;
  }
}

TEST_CASE("integration is deterministic") {
  const auto rhs = oscillator_rhs(osc("van_der_pol", {{"eps", 1.0}}));
  const auto a = integrate_ivp(rhs, {0.5, 0.0}, 0.0, 30.0, 1e-9);
  const auto b = integrate_ivp(rhs, {0.5, 0.0}, 0.0, 30.0, 1e-9);
  CHECK(a.times() == b.times());
  CHECK(a.final_state() == b.final_state());
}

TEST_CASE("blow-up is an integration failure") {
  const Rhs rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
  try {
    integrate_ivp(rhs, {1.0}, 0.0, 2.0, 1e-8);
    FAIL("expected IntegrationFailure");
  } catch (const IntegrationFailure& e) {
    // y = 1 / (1 - t) blows up at t = 1.
    CHECK(std::abs(e.last_time() - 1.0) < 1e-6);
  }
}

TEST_CASE("cycle measurement") {
  const auto harmonic = measure_cycle(oscillator_rhs(osc("duffing_cubic", {{"eps", 0.0}, {"A", 1.0}})), {1.0, 0.0},
                                      0.0, 1e-11);
  CHECK(std::abs(harmonic.period - kTwoPi) < 1e-6);
  CHECK(harmonic.amplitude == doctest::Approx(1.0).epsilon(1e-6));

  const auto vdp = measure_cycle(oscillator_rhs(osc("van_der_pol", {{"eps", 0.1}})), {0.5, 0.0}, 300.0, 1e-10);
  CHECK(std::abs(vdp.amplitude - 2.0) < 0.05);

  const double T = oscillator_period(osc("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}), 1.0);
  CHECK(std::abs(T - kTwoPi / std::sqrt(1.075)) / T < 0.02);

  // A damped oscillator decays to rest and never settles into a cycle.
  const auto damped = osc("duffing_cubic", {{"eps", 0.0}, {"A", 1.0}, {"delta", 0.5}});
  CHECK_THROWS_AS(measure_cycle(oscillator_rhs(damped), {1.0, 0.0}, 100.0, 1e-10), NoCycle);
}

TEST_CASE("shooting") {
  const auto blasius = shoot_bvp(bvp("falkner_skan", {{"beta", 0.0}}));
  REQUIRE(blasius.size() == 1);
  CHECK(std::abs(blasius[0].info.at("slope") - 0.4696) <= 1e-3);
  CHECK(std::abs(blasius[0].info.at("slope") - blasius[0].info.at("fpp0_far")) < 1e-5);
  CHECK(blasius[0].points.size() == 201);

  const auto bratu = shoot_bvp(bvp("bratu", {{"lambda", 1.0}}));
  REQUIRE(bratu.size() == 2);
  CHECK(bratu[0].info.at("slope") < bratu[1].info.at("slope"));
  for (const auto& s : bratu) {
    CHECK(std::abs(s.values.front()) < 1e-12);
    CHECK(std::abs(s.values.back()) < 1e-7);
  }

  CHECK(shoot_bvp(bvp("falkner_skan", {{"beta", -0.1}})).size() == 2);
  CHECK_THROWS_AS(shoot_bvp(bvp("bratu", {{"lambda", 4.0}})), NoSolution);
  CHECK_THROWS_AS(shoot_bvp(bvp("bratu", {{"lambda", 1.0}}), {{0.0, 0.1}}), NoSolution);

  const auto singular = shoot_bvp(bvp("singular_linear", {{"eps", 0.05}}));
  REQUIRE(singular.size() == 1);
  CHECK(singular[0].info.at("slope") == doctest::Approx(exact_singular_slope(bvp("singular_linear", {{"eps", 0.05}}))));
}

TEST_CASE("exact singular solution") {
  const auto spec = bvp("singular_linear", {{"eps", 0.01}, {"alpha", 0.0}, {"beta", 1.0}});
  const auto y = exact_singular(spec);
  CHECK(y(0.0) == doctest::Approx(0.0).scale(1.0));
  CHECK(y(1.0) == doctest::Approx(1.0));
  const auto tiny = exact_singular(bvp("singular_linear", {{"eps", 1e-4}}));
  for (double x : {0.2, 0.5, 0.8}) CHECK(tiny(x) == doctest::Approx(std::exp(1.0 - x)).epsilon(1e-3));
}

TEST_CASE("bratu fold") {
  const auto fold = bratu_fold(3.0, 4.0, 1e-4);
  CHECK(fold.hi - fold.lo <= 1e-4);
  CHECK(fold.lo > 3.0);
  CHECK(fold.hi < 4.0);
  CHECK(bratu_solution_count(fold.lo) == 2);
  CHECK(bratu_solution_count(fold.hi) == 0);
  CHECK_THROWS_AS(bratu_fold(0.5, 1.0, 1e-4), NoSolution);
}
