#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperlab/annihilator.hpp"
#include "hyperlab/fourier.hpp"
#include "hyperlab/serialize.hpp"
#include "oracles.hpp"

using namespace hyperlab;

namespace {

Measure1D reciprocal_unit() { return Measure1D({}, {reciprocal1p_piece(0.0, 1.0)}); }

}  // namespace

TEST_CASE("compression to the first axis is the stored representation") {
  const HyperbolaMeasure atom(2 * kPi, Measure1D({{1.0, 1.0}}, {}));
  REQUIRE(compress_pi1(atom).atoms().size() == 1);
  CHECK(compress_pi1(atom).atoms()[0].location == 1.0);
  CHECK(compress_pi1(HyperbolaMeasure(2 * kPi, Measure1D())).empty());
  const HyperbolaMeasure dens(2 * kPi, reciprocal_unit());
  CHECK(compress_pi1(dens).density(0.5) == cplx(2.0 / 3.0));
}

TEST_CASE("compression to the second axis") {
  const cplx w(0.3, -2.0);
  const Measure1D a = compress_pi2(HyperbolaMeasure(2 * kPi, Measure1D({{1.0, w}}, {})));
  REQUIRE(a.atoms().size() == 1);
  CHECK(a.atoms()[0].location == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(a.atoms()[0].weight == w);

  const Measure1D d = compress_pi2(HyperbolaMeasure(2 * kPi, reciprocal_unit()));
  for (double t : {-1.5, -2.0, -10.0, -1e4})
    CHECK(std::abs(d.density(t) - 1.0 / (t * t) / (1.0 + 1.0 / std::abs(t))) < 1e-15);
  CHECK(d.density(-0.5) == 0.0);
  // Mass by the oracle on u = -1/t in (0, 1].
  const double mass = oracle::simpson<double>(
      [&](double u) {
        // the image of [0, 1) excludes t = -1 itself
        const double v = std::min(u, 1.0 - 1e-16);
        return d.density(-1.0 / v).real() / (v * v);
      },
      1e-12, 1.0, 20000);
  CHECK(mass == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(total_variation(d) == doctest::Approx(std::log(2.0)).epsilon(1e-11));
  CHECK(compress_pi2(HyperbolaMeasure(2 * kPi, Measure1D())).empty());
}

TEST_CASE("pushforward under t -> gamma/t") {
  const Measure1D a = pushforward_inversion(Measure1D({{2.0, 1.0}}, {}), 1.0);
  CHECK(a.atoms()[0].location == 0.5);
  const Measure1D d = pushforward_inversion(reciprocal_unit(), 1.0);
  for (double t : {1.5, 2.0, 7.5, 1e3}) CHECK(std::abs(d.density(t) - 1.0 / (t * (1 + t))) < 1e-15);
  CHECK(total_variation(d) == doctest::Approx(std::log(2.0)).epsilon(1e-11));

  const Measure1D twice = pushforward_inversion(pushforward_inversion(reciprocal_unit(), 1.7), 1.7);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double t = u(rng);
    CHECK(std::abs(twice.density(t) - reciprocal_unit().density(t)) < 1e-12);
  }
  CHECK_THROWS_AS(pushforward_inversion(Measure1D({{0.0, 1.0}}, {}), 1.0), std::domain_error);
}

TEST_CASE("total variation") {
  CHECK(total_variation(Measure1D({{0.0, cplx(3, -4)}}, {})) == doctest::Approx(5.0));
  CHECK(total_variation(reciprocal_unit()) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(total_variation(Measure1D()) == 0.0);
}

TEST_CASE("restriction uses half-open intervals") {
  const Measure1D nu = critical_annihilator();
  const Measure1D low = restrict_to(nu, 0.0, 1.0);
  CHECK(low.pieces().size() == 1);
  CHECK(low.density(2.0) == 0.0);
  CHECK(restrict_to(nu, 2.0, 2.0).empty());

  const Measure1D atoms({{1.0, 1.0}, {2.0, 1.0}}, {});
  CHECK(restrict_to(atoms, 1.0, 2.0).atoms().size() == 1);
  CHECK(restrict_to(atoms, 1.0, 2.0).atoms()[0].location == 1.0);

  for (double cut : {0.3, 1.0, 4.0}) {
    const double a = total_variation(restrict_to(nu, -kInf, cut));
    const double b = total_variation(restrict_to(nu, cut, kInf));
    CHECK(a + b == doctest::Approx(total_variation(nu)).epsilon(1e-11));
  }
}

TEST_CASE("overlapping pieces are rejected") {
  CHECK_THROWS_AS(Measure1D({}, {reciprocal1p_piece(0.0, 1.0), reciprocal1p_piece(0.5, 2.0)}),
                  std::invalid_argument);
  CHECK_NOTHROW(Measure1D({}, {reciprocal1p_piece(0.0, 1.0), reciprocal1p_piece(1.0, 2.0)}));
}

TEST_CASE("quadrant tags") {
  const auto pp = QuadrantTag::parse("++");
  CHECK(pp.contains(1.0, 0.0));
  CHECK_FALSE(QuadrantTag::parse("++open").contains(1.0, 0.0));
  CHECK(QuadrantTag::parse("--").contains(-1.0, -2.0));
  CHECK_FALSE(QuadrantTag::parse("+-").contains(-1.0, -2.0));
  CHECK(QuadrantTag::parse(pp.name()).signs == pp.signs);
  CHECK_THROWS_AS(QuadrantTag::parse("+"), std::invalid_argument);
}

TEST_CASE("serialization round trip") {
  CHECK(fmt_double(0.1) == "0.1");
  CHECK(fmt_double(1.0) == "1");
  CHECK(fmt_double(-2.5e-300) == "-2.5e-300");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    CHECK(std::stod(fmt_double(x)) == x);
  }

  const Measure1D nu = combine(critical_annihilator(), Measure1D({{-3.0, cplx(1, 2)}}, {}));
  const json j = to_json(nu);
  const Measure1D back = measure_from_json(j);
  for (double t : {0.25, 0.99, 1.0, 3.0, 1e5}) CHECK(back.density(t) == nu.density(t));
  CHECK(back.atoms().size() == 1);
  CHECK(dump_stable(to_json(back)) == dump_stable(j));

  const Measure1D ad_hoc(
      {}, {DensityPiece::elementary(0.0, 1.0, [](double t) { return cplx(t); }, 0.5)});
  CHECK_THROWS_AS(to_json(ad_hoc), std::invalid_argument);
}

TEST_CASE("Fourier transform at the origin is the mass") {
  const HyperbolaMeasure mu(2 * kPi, combine(reciprocal_unit(), Measure1D({{-2.0, cplx(0, 1)}}, {})));
  const FtValue v = ft_point(mu, 0.0, 0.0, {});
  CHECK(std::abs(v.value - cplx(std::log(2.0), 1.0)) < 1e-12);
}
