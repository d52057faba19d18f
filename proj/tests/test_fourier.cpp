#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperlab/annihilator.hpp"
#include "hyperlab/fourier.hpp"
#include "oracles.hpp"

using namespace hyperlab;

namespace {

// int_y^inf e^{iv}/v dv for y > 0.
cplx phi(double y) { return cplx(-oracle::ci(y), oracle::si_tail(y)); }

// Transform of the critical annihilator at frequency 2 pi x, from the
// two-piece definition: a Simpson integral on [0,1) plus exponential
// integrals for the 1/t - 1/(1+t) tail.
cplx critical_ft_oracle(double x) {
  if (x < 0) return std::conj(critical_ft_oracle(-x));
  const double w = 2 * oracle::pi * x;
  const cplx head = oracle::simpson<cplx>(
      [w](double t) { return std::polar(1.0, w * t) / (1.0 + t); }, 0.0, 1.0, 4000);
  const cplx tail = phi(w) - std::polar(1.0, -w) * phi(2 * w);
  return head - tail;
}

const HyperbolaMeasure& critical() {
  static const HyperbolaMeasure mu(2 * kPi, critical_annihilator());
  return mu;
}

}  // namespace

TEST_CASE("single atom transforms") {
  const HyperbolaMeasure atom(2 * kPi, Measure1D({{1.0, 1.0}}, {}));
  CHECK(std::abs(ft_point(atom, 0, 0, {}).value - 1.0) < 1e-15);
  CHECK(std::abs(ft_point(atom, 2, 0, {}).value - 1.0) < 1e-14);
  // exp(pi i [xi1 t - xi2 / t]) at t = 1, m = 2 pi.
  CHECK(std::abs(ft_point(atom, 0.3, 0.7, {}).value - std::polar(1.0, kPi * (0.3 - 0.7))) < 1e-14);
  const HyperbolaMeasure scaled(4 * kPi, Measure1D({{0.5, 1.0}}, {}));
  CHECK(std::abs(ft_point(scaled, 0.0, 1.0, {}).value - std::polar(1.0, -kPi * 4.0 / 0.5)) < 1e-13);
}

TEST_CASE("critical annihilator vanishes on the first-axis lattice") {
  for (int j = -6; j <= 6; ++j) CHECK(std::abs(ft_point(critical(), 2.0 * j, 0.0, {}).value) <= 1e-10);
}

TEST_CASE("closed-form critical transform against two oracles") {
  for (int i = 1; i < 40; i += 2) {
    const double x = 0.1 * i;
    const cplx closed = critical_measure_ft(x);
    CHECK(std::abs(closed - critical_ft_oracle(x)) < 1e-9);
    CHECK(std::abs(closed - ft_point(critical(), 2 * x, 0.0, {}).value) < 1e-8);
    CHECK(closed == std::conj(critical_measure_ft(-x)));
  }
  for (int n = -5; n <= 5; ++n) CHECK(critical_measure_ft(n) == cplx(0.0));
  CHECK(std::abs(critical_measure_ft(0.5)) > 0.05);
  // The displayed lower limit changes values but keeps the integer zeros.
  CHECK(std::abs(critical_measure_ft(0.5, SiciLimit::abs_x) - critical_measure_ft(0.5)) > 1e-3);
  CHECK(critical_measure_ft(3.0, SiciLimit::abs_x) == cplx(0.0));
}

TEST_CASE("linearity") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const Measure1D a = critical_annihilator();
  const Measure1D b({{0.7, cplx(1, -1)}}, {reciprocal1p_piece(-0.5, -0.1)});
  for (int i = 0; i < 5; ++i) {
    const cplx ca(u(rng), u(rng)), cb(u(rng), u(rng));
    const double x1 = u(rng), x2 = u(rng);
    const HyperbolaMeasure sum(2 * kPi, combine(a.scaled(ca), b.scaled(cb)));
    const cplx lhs = ft_point(sum, x1, x2, {}).value;
    const cplx rhs = ca * ft_point(HyperbolaMeasure(2 * kPi, a), x1, x2, {}).value +
                     cb * ft_point(HyperbolaMeasure(2 * kPi, b), x1, x2, {}).value;
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("a non-integrable density fails loudly") {
  CHECK_THROWS_AS(reciprocal1p_piece(-2.0, -1.0), std::invalid_argument);
  const HyperbolaMeasure bad(
      2 * kPi, Measure1D({}, {DensityPiece::elementary(
                                 -2.0, -1.0, [](double t) { return cplx(1.0 / (1.0 + t)); }, kInf)}));
  CHECK_THROWS_AS(ft_point(bad, 0.3, 0.2, {}), QuadratureError);
}

TEST_CASE("lattice-cross enumeration") {
  LatticeCross c;
  auto pts = cross_points(c);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].xi1 == 0.0);
  CHECK(pts[0].xi2 == 0.0);

  c.alpha = 2;
  c.beta = 3;
  c.j_min = -1;
  c.j_max = 2;
  c.k_min = -2;
  c.k_max = 1;
  pts = cross_points(c);
  REQUIRE(pts.size() == 4 + 3);
  CHECK(pts[0].axis == 1);
  CHECK(pts[0].xi1 == -2.0);
  CHECK(pts[4].axis == 2);
  CHECK(pts[4].xi2 == -6.0);
  for (size_t i = 5; i < pts.size(); ++i) CHECK(pts[i].index != 0);

  c.quadrant = QuadrantTag::parse("++");
  for (const auto& p : cross_points(c)) CHECK((p.xi1 >= 0 && p.xi2 >= 0));
  c.j_min = 3;  // j_max + 1 encodes an empty range; k = 0, 1 survive the filter
  CHECK(cross_points(c).size() == 2);
  c.j_min = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("cross transforms") {
  LatticeCross c;
  const HyperbolaMeasure atom(2 * kPi, Measure1D({{2.0, cplx(0.0, 3.0)}}, {}));
  auto single = ft_on_cross(atom, c, {});
  REQUIRE(single.size() == 1);
  CHECK(single[0].ft.value == cplx(0.0, 3.0));

  c.alpha = c.beta = 2;
  c.j_min = c.k_min = -10;
  c.j_max = c.k_max = 10;
  for (const auto& s : ft_on_cross(HyperbolaMeasure(2 * kPi, Measure1D()), c, {}))
    CHECK(s.ft.value == cplx(0.0));
  for (const auto& s : ft_on_cross(critical(), c, {})) CHECK(std::abs(s.ft.value) <= 1e-8);
}

TEST_CASE("Nielsen spiral") {
  std::vector<double> xs(10000);
  for (int i = 0; i < 10000; ++i) xs[i] = 0.01 + (100.0 - 0.01) * i / 9999.0;
  const Spiral s = nielsen_spiral(xs);
  CHECK(s.min_modulus > 0.0);
  for (size_t i = 1; i < s.points.size(); ++i) {
    const auto& p = s.points[i - 1];
    const auto& q = s.points[i];
    // |d/dx (ci, si)| = 1/x
    CHECK(std::hypot(q.ci - p.ci, q.si - p.si) <= 1.0001 * (q.x - p.x) / p.x);
  }
  CHECK(nielsen_spiral({500.0}).points[0].modulus() <= 3e-3);
  CHECK_THROWS(nielsen_spiral({0.0}));
}
