#include <cmath>
#include <sstream>

#include "doctest.h"

#include "asymp/errors.hpp"
#include "asymp/methods_bvp.hpp"
#include "asymp/oracle.hpp"
#include "asymp/problems.hpp"

using namespace asymp;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("canonical problems") {
  const auto d = std::get<OscillatorSpec>(make_problem("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}));
  CHECK(d.cubic_coeff == 0.1);
  CHECK(d.linear_coeff == 1.0);
  CHECK(d.amplitude == 1.0);

  const auto b = std::get<BvpSpec>(make_problem("bratu", {{"lambda", 1.0}}));
  CHECK(b.kind == BvpKind::bratu);
  CHECK(b.lambda == 1.0);

  const auto p = std::get<OscillatorSpec>(make_problem("pendulum", {{"A", 0.5}}));
  CHECK(p.cubic_coeff == doctest::Approx(-1.0 / 6.0));

  CHECK(problem_names().size() == 12);
  for (const auto& name : problem_names()) CAPTURE(name);
}

TEST_CASE("invalid problems are rejected") {
  CHECK_THROWS_AS(make_problem("singular_linear", {{"eps", 0.3}}), InvalidProblem);
  CHECK_THROWS_AS(make_problem("no_such_problem", {}), InvalidProblem);
  CHECK_THROWS_AS(make_problem("duffing_cubic", {{"eps", 0.1}}), InvalidProblem);
  CHECK_THROWS_AS(make_problem("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}, {"zeta", 2.0}}), InvalidProblem);
  CHECK_THROWS_AS(make_problem("bratu", {{"lambda", -1.0}}), InvalidProblem);
  CHECK_THROWS_AS(make_problem("wkb", {{"eps", 0.01}, {"a", 1.0}, {"b", -2.0}}), InvalidProblem);
  CHECK_THROWS_AS(make_problem("kdv_wave", {{"c", -1.0}}), InvalidProblem);
}

TEST_CASE("damping and forcing produce warnings") {
  std::vector<std::string> warnings;
  make_problem("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}, {"delta", 0.2}}, &warnings);
  CHECK(warnings.size() == 1);
  warnings.clear();
  make_problem("duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}, &warnings);
  CHECK(warnings.empty());
}

TEST_CASE("make_problem is deterministic and names round-trip") {
  for (const auto& [name, params] : std::vector<std::pair<std::string, ParamMap>>{
           {"duffing_cubic", {{"eps", 0.1}, {"A", 1.0}}},
           {"bratu", {{"lambda", 2.0}}},
           {"snewton", {}},
           {"kdv_wave", {{"c", 4.0}}},
           {"lambert", {{"k", 2.0}, {"n", 3.0}}}}) {
    const auto a = make_problem(name, params);
    const auto b = make_problem(name, params);
    CHECK(a.index() == b.index());
    CHECK(problem_name(a) == name);
    if (const auto* o = std::get_if<OscillatorSpec>(&a)) CHECK(*o == std::get<OscillatorSpec>(b));
    if (const auto* o = std::get_if<BvpSpec>(&a)) CHECK(*o == std::get<BvpSpec>(b));
  }
}

TEST_CASE("residual examples") {
  const auto grid = linspace(-10.0, 10.0, 101);
  const TravelingWaveSpec kdv{4.0, 0.0};
  Candidate sech;
  sech.value = [](double x) { return -2.0 / std::pow(std::cosh(x), 2); };
  sech.d1 = [](double x) { return 4.0 * std::tanh(x) / std::pow(std::cosh(x), 2); };
  sech.d2 = [](double x) {
    const double s = 1.0 / std::cosh(x);
    const double t = std::tanh(x);
    return 4.0 * s * s * (s * s - 2.0 * t * t);
  };
  CHECK(residual(kdv, sech, grid).max_abs() < 1e-10);
  CHECK(residual(kdv, soliton_candidate(kdv), grid).max_abs() < 1e-10);

  const auto linear = make_problem("duffing_cubic", {{"eps", 0.0}, {"A", 1.0}});
  CHECK(residual(linear, Candidate::from_trig(TrigPoly::cosine(1.0, 1.0)), linspace(0.0, 10.0, 57)).max_abs() ==
        doctest::Approx(0.0));

  Candidate lambert;
  lambert.value = [](double x) { return std::cbrt(std::cos(2.0 * x)); };
  lambert.d1 = [](double x) { return -2.0 / 3.0 * std::sin(2.0 * x) * std::pow(std::cos(2.0 * x), -2.0 / 3.0); };
  lambert.d2 = [](double x) {
    const double c = std::cos(2.0 * x);
    const double s = std::sin(2.0 * x);
    return -4.0 / 3.0 * std::cbrt(c) - 8.0 / 9.0 * s * s * std::pow(c, -5.0 / 3.0);
  };
  const auto lp = make_problem("lambert", {{"k", 2.0}, {"n", 3.0}});
  CHECK(residual(lp, lambert, linspace(-0.7, 0.7, 141)).max_abs() < 1e-8);

  const auto bratu = make_problem("bratu", {{"lambda", 1.0}});
  CHECK_THROWS_AS(residual(bratu, Candidate::from_function([](double) { return 0.0; }), linspace(0.0, 2.0, 5)),
                  DomainError);
  CHECK_THROWS_AS(residual(make_problem("snewton", {}), lambert, linspace(0.1, 1.0, 5)), CapabilityError);
}

TEST_CASE("residual of oracle trajectories at accepted steps") {
  for (const auto& [name, params] : std::vector<std::pair<std::string, ParamMap>>{
           {"duffing_cubic", {{"eps", 0.3}, {"A", 1.0}}},
           {"duffing_quintic", {{"eps", 0.2}, {"A", 1.0}}},
           {"pendulum", {{"A", 1.0}}},
           {"van_der_pol", {{"eps", 0.5}}}}) {
    CAPTURE(name);
    const auto spec = std::get<OscillatorSpec>(make_problem(name, params));
    const auto traj = oracle::integrate_ivp(oracle::oscillator_rhs(spec), {spec.amplitude, 0.0}, 0.0, 20.0, 1e-10);
    std::vector<double> times(traj.times().begin(), traj.times().end());
    auto index = [&](double t) {
      return static_cast<std::size_t>(std::lower_bound(times.begin(), times.end(), t) - times.begin());
    };
    Candidate c;
    c.value = [&](double t) { return traj.state(index(t))[0]; };
    c.d1 = [&](double t) { return traj.state(index(t))[1]; };
    c.d2 = [&](double t) { return traj.derivative(index(t))[1]; };
    CHECK(residual(spec, c, times).max_abs() < 100.0 * 1e-10);
  }
}

TEST_CASE("config sections") {
  std::istringstream in(R"(
# comment
[problem.a]
name = duffing_cubic
eps = 0.1
; comment line
A = 1

[problem.b]
name = bratu
lambda = 2
)");
  const auto problems = load_problems(in);
  REQUIRE(problems.size() == 2);
  CHECK(problems[0].first == "a");
  CHECK(std::get<OscillatorSpec>(problems[0].second).cubic_coeff == 0.1);
  CHECK(std::get<BvpSpec>(problems[1].second).lambda == 2.0);

  std::istringstream bad("[problem]\nname = bratu\nlambda = two\n");
  CHECK_THROWS_AS(load_problems(bad), InvalidProblem);
}
