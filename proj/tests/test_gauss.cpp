#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hyperlab/gauss_map.hpp"

using namespace hyperlab;

TEST_CASE("single steps") {
  const GaussMap g(1.0);
  CHECK(g.step(0.5) == 0.0);
  CHECK(g.step(2.0 / 3.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(GaussMap(0.37).step(0.0) == 0.0);
  CHECK_THROWS_AS(g.step(1.0), std::domain_error);
  CHECK_THROWS_AS(g.step(-0.1), std::domain_error);
  CHECK_THROWS_AS(GaussMap(0.0), std::domain_error);
}

TEST_CASE("branch points snap to zero and are flagged") {
  const GaussMap g(1.0);
  bool snapped = false;
  CHECK(g.step(0.25 * (1 + 1e-15), &snapped) == 0.0);
  CHECK(snapped);
  g.step(0.3, &snapped);
  CHECK_FALSE(snapped);
}

TEST_CASE("orbits") {
  const GaussMap g(1.0);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto o = g.orbit(phi, 5);
  CHECK(o.size() == 6);
  for (double x : o) CHECK(std::abs(x - phi) < 1e-12 * 8);
  for (double x : g.orbit(0.0, 7)) CHECK(x == 0.0);
  CHECK_THROWS(g.orbit(1.5, 3));
}

TEST_CASE("branch inverses") {
  const GaussMap g(1.0);
  CHECK_FALSE(g.branch_inverse(0.0, 1).has_value());
  REQUIRE(g.branch_inverse(0.5, 1).has_value());
  CHECK(*g.branch_inverse(0.5, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(g.step(*g.branch_inverse(0.5, 1)) == doctest::Approx(0.5).epsilon(1e-15));

  const GaussMap h(1.5);
  CHECK_FALSE(h.branch_inverse(0.5, 1).has_value());
  REQUIRE(h.branch_inverse(0.5, 2).has_value());
  CHECK(*h.branch_inverse(0.5, 2) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(h.step(0.6) == doctest::Approx(0.5).epsilon(1e-14));

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (double gamma : {0.4, 1.0, 1.7}) {
    const GaussMap m(gamma);
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng);
      const double y = m.step(x);
      const int j = static_cast<int>(std::floor(gamma / x));
      if (j < 1 || std::abs(gamma / x - std::round(gamma / x)) < 1e-9) continue;
      const auto back = m.branch_inverse(y, j);
      REQUIRE(back.has_value());
      CHECK(std::abs(*back - x) < 1e-14 / (x * x) * gamma);
    }
  }
}

TEST_CASE("uniform expansion for gamma > 1") {
  const GaussMap g(1.3);
  for (int i = 1; i < 100; ++i) CHECK(g.derivative_abs(i / 100.0) > 1.3);
}

TEST_CASE("coverage fractions") {
  const int n = 100000;
  const auto f = coverage_fraction(GaussMap(0.5), 0.5, 1.0, 10, n);
  REQUIRE(f.size() == 11);
  CHECK(std::abs(f[0] - 0.5) <= 2.0 / n);
  CHECK(f[10] >= 0.99);
  for (size_t k = 1; k < f.size(); ++k) CHECK(f[k] >= f[k - 1]);

  const auto g = coverage_fraction(GaussMap(0.99), 0.99, 1.0, 20, 20000);
  for (size_t k = 1; k < g.size(); ++k) {
    CHECK(g[k] >= g[k - 1]);
    CHECK(g[k] <= 1.0);
  }
}

// Orbits of an expanding map separate at the rounding level within a few
// steps, so the simulation repeats double arithmetic and the branch-point
// rule: gamma/x within 1e-13 relative of an integer maps to 0.
TEST_CASE("coverage against a direct orbit simulation") {
  const double gamma = 0.6;
  const int n = 5000, kmax = 6;
  std::vector<int> hits(kmax + 1, 0);
  for (int i = 0; i < n; ++i) {
    double x = (i + 0.5) / n;
    for (int k = 0; k <= kmax; ++k) {
      if (x >= gamma) {
        for (int r = k; r <= kmax; ++r) ++hits[r];
        break;
      }
      for (int s = 0; s < 2; ++s) {
        if (x == 0) break;
        const double y = gamma / x;
        x = std::abs(y - std::round(y)) <= 1e-13 * y ? 0.0 : y - std::floor(y);
      }
    }
  }
  const auto f = coverage_fraction(GaussMap(gamma), gamma, 1.0, kmax, n);
  for (int k = 0; k <= kmax; ++k) CHECK(f[k] == static_cast<double>(hits[k]) / n);
}
