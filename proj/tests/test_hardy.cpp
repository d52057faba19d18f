#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hyperlab/hardy.hpp"
#include "oracles.hpp"

using namespace hyperlab;

namespace {

const cplx I(0.0, 1.0);

Measure1D cauchy() {
  return line_density([](double t) { return cplx(1.0 / (oracle::pi * (1 + t * t))); }, 1.0);
}

Measure1D cauchy_derivative() {
  return line_density(
      [](double t) { return cplx(-2 * t / (oracle::pi * (1 + t * t) * (1 + t * t))); }, 1.0);
}

Measure1D upper_square() {
  return line_density([](double t) { return 1.0 / ((t + I) * (t + I)); }, oracle::pi);
}

Measure1D lower_square() {
  return line_density([](double t) { return 1.0 / ((t - I) * (t - I)); }, oracle::pi);
}

}  // namespace

TEST_CASE("Q2 of an indicator and of the Cauchy density") {
  const auto unit = [](double) { return cplx(1); };
  const Measure1D box({}, {DensityPiece::elementary(-3, 0, unit, 3.0), DensityPiece::elementary(0, 3, unit, 3.0)});
  const PeriodicFunction2 g = periodize_q2(box, 64);
  for (const cplx& v : g.samples) CHECK(std::abs(v - 3.0) <= 1e-12);

  // sum_j 1/(pi(1+(x+2j)^2)) = sinh(pi) / (2 (cosh(pi) - cos(pi x)))
  const PeriodicFunction2 c = periodize_q2(cauchy(), 256);
  for (int i = 0; i < c.size(); i += 17) {
    const double x = c.x(i);
    const double want = std::sinh(oracle::pi) / (2 * (std::cosh(oracle::pi) - std::cos(oracle::pi * x)));
    CHECK(std::abs(c.samples[i] - want) <= 1e-9);
  }
  CHECK(std::abs(2.0 * c.mean() - 1.0) <= 1e-8);
}

TEST_CASE("Q2 of 1/(t+i)^2 matches the cosecant sum") {
  const PeriodicFunction2 g = periodize_q2(upper_square(), 128);
  for (int i = 0; i < g.size(); i += 9) {
    const cplx s = std::sin(oracle::pi * (g.x(i) + I) / 2.0);
    const cplx want = (oracle::pi * oracle::pi / 4.0) / (s * s);
    CHECK(std::abs(g.samples[i] - want) <= 1e-8);
  }
}

TEST_CASE("Q2 is translation invariant by 2 and keeps oddness") {
  const Measure1D f = cauchy_derivative();
  const Measure1D shifted = line_density(
      [](double t) {
        const double s = t - 2;
        return cplx(-2 * s / (oracle::pi * (1 + s * s) * (1 + s * s)));
      },
      1.0);
  const PeriodicFunction2 a = periodize_q2(f, 128), b = periodize_q2(shifted, 128);
  for (int i = 0; i < a.size(); ++i) CHECK(std::abs(a.samples[i] - b.samples[i]) <= 1e-10);
  // x_i and x_{N-i} are mirror points of the grid on [-1, 1).
  for (int i = 1; i < a.size(); ++i)
    CHECK(std::abs(a.samples[i] + a.samples[a.size() - i]) <= 1e-10);
}

TEST_CASE("inversion J for p = 1") {
  const Measure1D ind({}, {DensityPiece::elementary(1, 2, [](double) { return cplx(1); }, 1.0)});
  const Measure1D j = inversion_j(ind, 1.0);
  CHECK(total_variation(j) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j.density(-0.75).real() == doctest::Approx(1 / 0.5625).epsilon(1e-14));
  CHECK(j.density(-0.4) == cplx(0.0));
  CHECK(j.density(0.75) == cplx(0.0));
  const Measure1D jj = inversion_j(j, 1.0);
  for (double x : {1.0, 1.25, 1.5, 1.999}) CHECK(std::abs(jj.density(x) - 1.0) <= 1e-12);

  CHECK_THROWS_AS(inversion_j(Measure1D({{0.0, cplx(1)}}, {}), 1.0), std::domain_error);
}

TEST_CASE("inversion J is an L^p isometry and an involution") {
  const auto norm_p = [](const Measure1D& f, double p) {
    double total = 0.0;
    for (const DensityPiece& piece : f.pieces())
      total += oracle::simpson<double>(
          [&](double x) { return std::pow(std::abs(piece.density(x)), p); }, piece.lo(),
          std::nextafter(piece.hi(), piece.lo()), 20000);
    return total;
  };
  const std::vector<Measure1D> families = {
      Measure1D({}, {DensityPiece::elementary(0.5, 2, [](double t) { return cplx(1 + t * t); }, 10.0)}),
      Measure1D({}, {DensityPiece::elementary(
                        -3, -1, [](double t) { return std::exp(I * t) * (2 + std::sin(t)); }, 10.0)}),
      Measure1D({}, {DensityPiece::elementary(0.25, 4, [](double t) { return (1.0 + I) / (1 + t); }, 10.0),
                     DensityPiece::elementary(-1, -0.5, [](double t) { return cplx(t); }, 1.0)})};
  const double beta = 2.5;
  for (double p : {1.0, 0.75, 0.5}) {
    for (const Measure1D& f : families) {
      const Measure1D jf = inversion_j(f, beta, p);
      CHECK(norm_p(jf, p) == doctest::Approx(norm_p(f, p)).epsilon(1e-10));
      const Measure1D jjf = inversion_j(jf, beta, p);
      // theta_p(x) theta_p(-beta/x) = exp(-2 pi i / p) whenever x != 0.
      const cplx phase = std::exp(-2.0 * oracle::pi * I / p);
      for (double x : {-2.9, -1.5, -0.7, 0.3, 0.6, 1.7, 3.5})
        CHECK(std::abs(jjf.density(x) - phase * f.density(x)) <= 1e-12 * (1 + std::abs(f.density(x))));
    }
  }
}

TEST_CASE("inversion J pointwise formula for p < 1") {
  const double beta = 1.5, p = 0.75;
  const Measure1D f = lower_square();
  const Measure1D jf = inversion_j(f, beta, p);
  for (double x : {-2.0, -0.3, 0.6, 4.0}) {
    const cplx theta = x > 0 ? cplx(1.0) : std::exp(-2.0 * oracle::pi * I / p);
    const cplx want = std::pow(beta, 1 / p) * std::pow(std::abs(x), -2 / p) * theta * f.density(-beta / x);
    CHECK(std::abs(jf.density(x) - want) <= 1e-13 * std::abs(want));
  }
}

TEST_CASE("Fourier coefficients of periodic samples") {
  PeriodicFunction2 one{std::vector<cplx>(64, cplx(1.0))};
  const FourierCoefficients c1 = fourier_coeffs_periodic(one, 8);
  CHECK(std::abs(c1.at(0) - 1.0) <= 1e-14);
  for (int n = 1; n <= 8; ++n) CHECK(std::abs(c1.at(n)) + std::abs(c1.at(-n)) <= 1e-14);

  PeriodicFunction2 wave;
  for (int i = 0; i < 64; ++i) wave.samples.push_back(std::exp(3.0 * oracle::pi * I * (-1.0 + 2.0 * i / 64)));
  const FourierCoefficients c3 = fourier_coeffs_periodic(wave, 8);
  for (int n = -8; n <= 8; ++n) CHECK(std::abs(c3.at(n) - (n == 3 ? 1.0 : 0.0)) <= 1e-13);
}

TEST_CASE("Hardy defect separates the half planes") {
  const HardyDefect up = hardy_defect(upper_square(), 32, 1024);
  CHECK(up.ratio <= 1e-6);
  CHECK(up.ratio_nonpos <= 1e-6);
  const HardyDefect down = hardy_defect(lower_square(), 32, 1024);
  CHECK(down.ratio >= 0.999);
  for (const HardyDefect& d : {up, down}) {
    CHECK(d.neg_mass + d.pos_mass <= d.total_mass * (1 + 1e-15));
    CHECK(d.nonpos_mass >= d.neg_mass);
    CHECK(d.total_mass == doctest::Approx(d.nonpos_mass + d.pos_mass).epsilon(1e-14));
  }

  FourierCoefficients c{3, {1.0, 2.0, -0.5, 0.25, I, 3.0, 0.0}};
  FourierCoefficients mirrored{3, std::vector<cplx>(c.c.rbegin(), c.c.rend())};
  const HardyDefect a = hardy_defect(c), b = hardy_defect(mirrored);
  CHECK(a.neg_mass == b.pos_mass);
  CHECK(a.pos_mass == b.neg_mass);
  CHECK(a.total_mass == b.total_mass);
  CHECK(a.neg_mass == 3.5);
  CHECK(a.pos_mass == 4.0);
  CHECK(a.nonpos_mass == 3.75);
}

TEST_CASE("Hilbert transform on the line") {
  const std::vector<double> xs = {-3, -1.5, -0.2, 0, 0.7, 2};
  const auto h = hilbert_line(cauchy(), xs);
  for (size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    CHECK(h[i].converged);
    CHECK(std::abs(h[i].value - x / (oracle::pi * (1 + x * x))) <= 1e-6);
    CHECK(h[i].error <= 1e-6);
  }
  const auto mirrored = hilbert_line(cauchy(), {3.0, 1.5});
  CHECK(std::abs(mirrored[0].value + h[0].value) <= 1e-9);
  CHECK(std::abs(mirrored[1].value + h[1].value) <= 1e-9);

  const auto hd = hilbert_line(cauchy_derivative(), xs);
  for (size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    CHECK(std::abs(hd[i].value - (1 - x * x) / (oracle::pi * (1 + x * x) * (1 + x * x))) <= 1e-6);
  }
  for (const auto& s : hilbert_line(Measure1D(), {0.5})) CHECK(s.value == cplx(0.0));
}

TEST_CASE("Hilbert transform applied twice is minus the identity") {
  const Measure1D hf = hilbert_line_measure(cauchy());
  for (const auto& s : hilbert_line(hf, {-1.0, 0.0, 0.5, 2.0}))
    CHECK(std::abs(s.value + 1 / (oracle::pi * (1 + s.x * s.x))) <= 5e-4);
}

TEST_CASE("Hilbert transform on the hyperbola") {
  const HyperbolaMeasure nu(2 * oracle::pi, cauchy_derivative());
  QuadratureSpec q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-8;
  for (const AxisSample& s : hilbert_axis_check(nu, {-2, -1, 1, 2}, q)) CHECK(s.gap <= 1e-5);
  const HilbertGamma g = hilbert_hyperbola(nu, {-3, -1, -0.5, 0.5, 1, 3});
  CHECK(g.route_gap <= g.route_tol);
  CHECK_THROWS_AS(hilbert_hyperbola(HyperbolaMeasure(2 * oracle::pi, cauchy()), {1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(hilbert_axis_check(nu, {0.0}), std::invalid_argument);
}

TEST_CASE("timelike witness annihilates both families") {
  const TimelikeWitness w = timelike_witness(I, 1.0, 10, 10);
  CHECK(w.pairings.size() == 22);
  for (const Pairing& p : w.pairings) CHECK(std::abs(p.value) <= 1e-6);
  CHECK(w.l1_norm > 0.0);
  CHECK_THROWS_AS(timelike_witness(cplx(0, 0), 1.0, 1, 1), std::domain_error);
  CHECK_THROWS_AS(timelike_witness(cplx(0, -1), 1.0, 1, 1), std::domain_error);
}
