#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "asymp/errors.hpp"
#include "asymp/grid_function.hpp"
#include "asymp/numerics.hpp"

using namespace asymp;

TEST_CASE("quadrature") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 3.0) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(integrate([](double) { return 2.0; }, 0.0, 1e-3, 1e-13) == doctest::Approx(2e-3).epsilon(1e-14));
  CHECK(integrate([](double x) { return x; }, 1.0, 0.0) == doctest::Approx(-0.5));
  CHECK(integrate([](double x) { return std::sin(40.0 * x); }, 0.0, std::numbers::pi) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return x; }, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(integrate([](double x) { return 1.0 / x; }, -1.0, 1.0), NumericError);
}

TEST_CASE("roots") {
  CHECK(refine_root([](double x) { return x * x - 2.0; }, 0.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(refine_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), NoSolution);
  const auto r = find_roots([](double x) { return std::sin(x); }, 0.5, 10.0, 100);
  REQUIRE(r.size() == 3);
  CHECK(r[0] == doctest::Approx(std::numbers::pi));
  CHECK(r[2] == doctest::Approx(3.0 * std::numbers::pi));
}

TEST_CASE("chebyshev interpolant") {
  const ChebyshevInterpolant c([](double x) { return std::exp(x); }, 0.0, 1.0, 24);
  for (double x : {0.0, 0.13, 0.5, 0.91, 1.0}) {
    CHECK(c(x) == doctest::Approx(std::exp(x)).epsilon(1e-14));
    CHECK(c.derivative(x) == doctest::Approx(std::exp(x)).epsilon(1e-11));
  }
}

TEST_CASE("grid function") {
  GridFunction g{{0.0, 1.0, 2.0}, {0.0, 2.0, -4.0}, 1e-8, "test", {}};
  g.validate();
  CHECK(g.interpolate(0.5) == doctest::Approx(1.0));
  CHECK(g.interpolate(1.5) == doctest::Approx(-1.0));
  CHECK(g.max_abs() == 4.0);
  std::ostringstream out;
  g.write_csv(out);
  CHECK(out.str().find("x,") == 0);
  GridFunction bad{{0.0, 0.0}, {1.0, 2.0}, 0.0, "", {}};
  CHECK_THROWS(bad.validate());
  GridFunction mismatch{{0.0, 1.0}, {1.0}, 0.0, "", {}};
  CHECK_THROWS(mismatch.validate());
}
