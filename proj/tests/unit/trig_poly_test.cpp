#include <cmath>
#include <random>

#include "doctest.h"

#include "asymp/errors.hpp"
#include "asymp/numerics.hpp"
#include "asymp/trig_poly.hpp"

using namespace asymp;

namespace {

TrigPoly random_poly(std::mt19937_64& rng, double w, unsigned max_harmonic, bool resonant) {
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  std::vector<TrigTerm> terms;
  for (unsigned n = 0; n <= max_harmonic; ++n) {
    if (n == 1 && !resonant) continue;
    terms.push_back({c(rng), 0, n, Kind::cosine});
    if (n > 0) terms.push_back({c(rng), 0, n, Kind::sine});
  }
  return TrigPoly(w, std::move(terms));
}

}  // namespace

TEST_CASE("construction normalizes") {
  const TrigPoly p(1.0, {{1.0, 0, 3, Kind::cosine}, {2.0, 0, 1, Kind::cosine}, {-1.0, 0, 3, Kind::cosine},
                         {5.0, 0, 0, Kind::sine}, {1e-20, 0, 2, Kind::cosine}});
  REQUIRE(p.terms().size() == 1);
  CHECK(p.coefficient(0, 1, Kind::cosine) == 2.0);
  CHECK(TrigPoly(1.0, {}).is_zero());
  CHECK_THROWS_AS(TrigPoly(0.0), std::invalid_argument);
  CHECK_THROWS_AS(TrigPoly(1.0, {{NAN, 0, 1, Kind::cosine}}), NumericError);
}

TEST_CASE("product-to-sum identities") {
  const double w = 1.3;
  const auto c = TrigPoly::cosine(w, 1.0);
  const auto sq = multiply(c, c);
  CHECK(sq.coefficient(0, 0, Kind::cosine) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sq.coefficient(0, 2, Kind::cosine) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sq.terms().size() == 2);

  const double A = 0.7;
  const auto cube = power(TrigPoly::cosine(w, A), 3);
  CHECK(cube.coefficient(0, 1, Kind::cosine) == doctest::Approx(0.75 * A * A * A).epsilon(1e-14));
  CHECK(cube.coefficient(0, 3, Kind::cosine) == doctest::Approx(0.25 * A * A * A).epsilon(1e-14));
  CHECK(cube.terms().size() == 2);

  const auto fifth = power(TrigPoly::cosine(w, A), 5);
  const double A5 = std::pow(A, 5);
  CHECK(fifth.coefficient(0, 1, Kind::cosine) == doctest::Approx(10.0 * A5 / 16.0).epsilon(1e-14));
  CHECK(fifth.coefficient(0, 3, Kind::cosine) == doctest::Approx(5.0 * A5 / 16.0).epsilon(1e-14));
  CHECK(fifth.coefficient(0, 5, Kind::cosine) == doctest::Approx(A5 / 16.0).epsilon(1e-14));
  CHECK(fifth.terms().size() == 3);

  CHECK_THROWS_AS(multiply(TrigPoly::cosine(1.0, 1.0), TrigPoly::cosine(2.0, 1.0)), FrequencyMismatch);
  CHECK_THROWS_AS(TrigPoly::cosine(1.0, 1.0) + TrigPoly::sine(1.5, 1.0), FrequencyMismatch);
}

TEST_CASE("differentiation") {
  const double w = 0.8;
  const auto d2 = differentiate(TrigPoly::cosine(w, 1.0), 2);
  CHECK(d2.coefficient(0, 1, Kind::cosine) == doctest::Approx(-w * w));
  CHECK(d2.terms().size() == 1);

  const TrigPoly tsin(w, {{1.0, 1, 1, Kind::sine}});
  const auto d = differentiate(tsin);
  CHECK(d.coefficient(0, 1, Kind::sine) == doctest::Approx(1.0));
  CHECK(d.coefficient(1, 1, Kind::cosine) == doctest::Approx(w));
  CHECK(d.terms().size() == 2);

  const double A = 1.7;
  const auto d3 = differentiate(TrigPoly::cosine(w, A, 3), 2);
  CHECK(d3.coefficient(0, 3, Kind::cosine) == doctest::Approx(-9.0 * w * w * A));
  CHECK_THROWS_AS(differentiate(tsin, 0), std::invalid_argument);
}

TEST_CASE("sine kernel closed forms") {
  const double w = 1.2;
  const double eps = 0.1;
  const double A = 1.0;
  const auto g = integrate_sine_kernel(TrigPoly::cosine(w, eps * A * A * A / 4.0, 3));
  const double c = eps * A * A * A / (32.0 * w * w);
  CHECK(g.coefficient(0, 3, Kind::cosine) == doctest::Approx(c).epsilon(1e-14));
  CHECK(g.coefficient(0, 1, Kind::cosine) == doctest::Approx(-c).epsilon(1e-14));
  CHECK(g.terms().size() == 2);

  CHECK(integrate_sine_kernel(TrigPoly(w)).is_zero());

  const auto r = integrate_sine_kernel(TrigPoly::cosine(w, 1.0));
  CHECK(r.coefficient(1, 1, Kind::sine) == doctest::Approx(-1.0 / (2.0 * w)));
  CHECK(r.terms().size() == 1);
  const auto lhs = differentiate(r, 2) + w * w * r + TrigPoly::cosine(w, 1.0);
  CHECK(lhs.scale() < 1e-14);
  for (double t : {0.3, 1.7, 4.0}) {
    const double h = 1e-3;
    const double fd = (r(t + h) - 2.0 * r(t) + r(t - h)) / (h * h);
    CHECK(std::abs(fd + w * w * r(t) + std::cos(w * t)) < 1e-5);
  }

  CHECK_THROWS_AS(integrate_sine_kernel(r), CapabilityError);
}

TEST_CASE("secular detection") {
  const double w = 1.0;
  CHECK(detect_secular(TrigPoly::cosine(w, 1.0) + TrigPoly::cosine(w, 0.1 / 32.0, 3)).empty());
  const TrigPoly mixed(w, {{1.0, 1, 1, Kind::sine}, {1.0, 0, 1, Kind::cosine}});
  const auto found = detect_secular(mixed);
  REQUIRE(found.size() == 1);
  CHECK(found[0] == TrigTerm{1.0, 1, 1, Kind::sine});
  CHECK(detect_secular(integrate_sine_kernel(TrigPoly::cosine(w, 1.0))).size() == 1);
}

TEST_CASE("text form") {
  CHECK(TrigPoly(1.0).to_string() == "0");
  const TrigPoly p(1.0, {{2.0, 0, 1, Kind::cosine}, {0.5, 1, 3, Kind::sine}});
  CHECK(p.to_string() == "2 * t^0 * cos(1*w*t) + 0.5 * t^1 * sin(3*w*t)");
}

TEST_CASE("property: kernel contract on random non-resonant input") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> wd(0.3, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double w = wd(rng);
    const auto f = random_poly(rng, w, 6, false);
    const auto g = integrate_sine_kernel(f);
    const auto lhs = differentiate(g, 2) + w * w * g + f;
    CHECK(std::abs(g(0.0)) < 1e-12 * f.scale());
    CHECK(std::abs(differentiate(g)(0.0)) < 1e-12 * f.scale());
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) worst = std::max(worst, std::abs(lhs(0.1 * i / w)));
    CHECK(worst < 1e-10 * f.scale());
    CHECK(detect_secular(g).empty());
  }
}

TEST_CASE("property: algebra and evaluation agree") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> wd(0.5, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double w = wd(rng);
    const auto a = random_poly(rng, w, 4, true);
    const auto b = random_poly(rng, w, 4, true);
    const auto c = random_poly(rng, w, 3, true);
    CHECK(a.normalized() == a);
    CHECK(a.normalized().normalized() == a.normalized());
    CHECK(approx_equal(multiply(a, b), multiply(b, a), 1e-12));
    CHECK(approx_equal(multiply(multiply(a, b), c), multiply(a, multiply(b, c)), 1e-12));
    CHECK(approx_equal(a - a, TrigPoly(w), 0.0));

    const auto ab = multiply(a, b);
    std::uniform_real_distribution<double> td(0.0, 10.0 / w);
    for (int i = 0; i < 200; ++i) {
      const double t = td(rng);
      CHECK(ab(t) == doctest::Approx(a(t) * b(t)).epsilon(1e-10).scale(a.scale() * b.scale()));
    }
    const auto k = integrate_sine_kernel(random_poly(rng, w, 4, false));
    CHECK(approx_equal(power(a, 2), multiply(a, a), 1e-12));
    CHECK(detect_secular(k).empty());
  }
}

TEST_CASE("property: kernel matches quadrature") {
  std::mt19937_64 rng(3);
  const double w = 1.1;
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_poly(rng, w, 3, true);
    const auto g = integrate_sine_kernel(f);
    for (double t : {0.5, 2.0, 7.5}) {
      const double q = integrate([&](double s) { return std::sin(w * (s - t)) * f(s); }, 0.0, t, 1e-13) / w;
      CHECK(g(t) == doctest::Approx(q).epsilon(1e-8).scale(f.scale()));
    }
  }
}
