#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hyperlab/annihilator.hpp"
#include "hyperlab/defect.hpp"
#include "oracles.hpp"

using namespace hyperlab;

namespace {

const cplx I(0.0, 1.0);

// Phi(y) = int_y^inf e^{iv}/v dv for y > 0.
cplx phi(double y) { return std::isinf(y) ? cplx(0.0) : cplx(-oracle::ci(y), oracle::si_tail(y)); }

// int_a^b e^{ik/u} du for 0 <= a < b.
cplx reciprocal_exp_integral(double k, double a, double b) {
  if (k == 0.0) return b - a;
  if (k < 0.0) return std::conj(reciprocal_exp_integral(-k, a, b));
  const auto boundary = [k](double u) { return u == 0.0 ? cplx(0.0) : u * std::polar(1.0, k / u); };
  const double ya = a == 0.0 ? INFINITY : k / a;
  return boundary(b) - boundary(a) + I * k * (phi(k / b) - phi(ya));
}

// Pairing of reciprocal-bin element b (scale c, M per side, m = 2 pi) with
// e^{i(omega t + kappa/t)} where exactly one of omega, kappa is nonzero.
cplx bin_entry(int b, int M, double c, double omega, double kappa) {
  if (b < M) {
    const double lo = c * b / M, hi = c * (b + 1) / M;
    return kappa == 0.0 ? oracle::exp_integral(omega, lo, hi) / c
                        : reciprocal_exp_integral(kappa, lo, hi) / c;
  }
  const int i = b - M;
  const double ua = static_cast<double>(i) / M, ub = static_cast<double>(i + 1) / M;
  // t = c/u carries c/t^2 dt to du.
  return kappa == 0.0 ? reciprocal_exp_integral(omega * c, ua, ub)
                      : oracle::exp_integral(kappa / c, ua, ub);
}

// Transform of the hat element centred at n delta at the phase (A, B):
// 2 pi Lambda(A + n delta) plus the correction from e^{iB/t} - 1, whose
// transform at frequency a is -2 pi sqrt(b/a) J1(2 sqrt(ab)) when ab > 0.
cplx hat_entry(int n, double delta, double A, double B) {
  const auto hat = [delta](double w) { return std::max(0.0, 1.0 - std::abs(w) / delta); };
  const auto R = [](double a, double b) {
    if (!(a * b > 0.0)) return 0.0;
    return -2 * oracle::pi * std::sqrt(b / a) * std::cyl_bessel_j(1.0, 2 * std::sqrt(a * b));
  };
  const auto f = [&](double w) { return hat(w - n * delta) * R(w + A, B); };
  double lo = n * delta - delta, hi = n * delta + delta, correction = 0.0;
  const double cut = -A;
  const int panels = 20000;
  if (cut > lo && cut < hi) {
    correction = oracle::simpson<double>(f, lo, std::nextafter(cut, lo), panels) +
                 oracle::simpson<double>(f, std::nextafter(cut, hi), hi, panels);
  } else {
    correction = oracle::simpson<double>(f, lo, hi, panels);
  }
  return 2 * oracle::pi * hat(A + n * delta) + correction;
}

QuadratureSpec tight() {
  QuadratureSpec q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-11;
  return q;
}

}  // namespace

TEST_CASE("reciprocal bins: elements and masses") {
  const CandidateBasis B = reciprocal_bin_basis(4, 2 * oracle::pi, 1.5);
  CHECK(B.size() == 8);
  for (int b = 0; b < B.size(); ++b)
    CHECK(std::abs(total_mass(B.element(b), tight()) - 0.25) <= 1e-12);
  CHECK(B.element(1).density(0.5).real() == doctest::Approx(1 / 1.5));
  // u-bin 1 covers u in [1/4, 1/2), i.e. t in (3, 6], with density c/t^2.
  CHECK(B.element(5).density(4.0).real() == doctest::Approx(1.5 / 16));
  CHECK(B.element(5).density(2.9) == cplx(0.0));
  CHECK_THROWS_AS(B.element(8), std::out_of_range);

  const Eigen::VectorXcd p = B.project(B.element(6));
  for (int b = 0; b < B.size(); ++b) CHECK(std::abs(p(b) - (b == 6 ? 1.0 : 0.0)) <= 1e-12);
}

TEST_CASE("reciprocal bins: matrix entries against closed forms") {
  const int M = 4;
  for (double c : {1.0, 0.7}) {
    const CandidateBasis B = reciprocal_bin_basis(M, 2 * oracle::pi, c);
    LatticeCross cross;
    cross.alpha = 2.0;
    cross.beta = 1.5;
    cross.j_min = cross.k_min = -3;
    cross.j_max = cross.k_max = 3;
    const ConstraintMatrix A = build_constraint_matrix(B, cross, tight());
    REQUIRE(A.failures.empty());
    REQUIRE(A.entries.rows() == 13);
    for (Eigen::Index r = 0; r < A.entries.rows(); ++r) {
      const CrossPoint& p = A.rows[static_cast<size_t>(r)];
      // m = 2 pi: omega = pi xi1, kappa = -pi xi2.
      const double omega = oracle::pi * p.xi1, kappa = -oracle::pi * p.xi2;
      for (int b = 0; b < B.size(); ++b) {
        const cplx want = bin_entry(b, M, c, omega, kappa);
        CHECK(std::abs(A.entries(r, b) - want) <= 1e-8);
      }
    }
  }
}

TEST_CASE("spectral hats: matrix entries against the Bessel kernel") {
  const int N = 2;
  const double delta = oracle::pi / 4;
  const CandidateBasis B = spectral_hat_basis(N, delta, 2 * oracle::pi);
  CHECK(B.centre(0) == -2 * delta);
  CHECK(B.centre(1) == -delta);
  CHECK(B.centre(2) == delta);
  CHECK(B.centre(3) == 2 * delta);
  for (int b = 0; b < B.size(); ++b) CHECK(std::abs(total_mass(B.element(b), tight())) <= 1e-9);

  const auto rows = distorted_cross_points(0.7, 0.4, 1.0, 1.0, 1, 2);
  const ConstraintMatrix A = build_constraint_matrix(B, rows, tight());
  REQUIRE(A.failures.empty());
  for (Eigen::Index r = 0; r < A.entries.rows(); ++r) {
    const CrossPoint& p = rows[static_cast<size_t>(r)];
    for (int b = 0; b < B.size(); ++b) {
      const int n = static_cast<int>(std::lround(B.centre(b) / delta));
      const cplx want = hat_entry(n, delta, oracle::pi * p.xi1, -oracle::pi * p.xi2);
      CHECK(std::abs(A.entries(r, b) - want) <= 1e-6);
    }
  }
}

TEST_CASE("empty cross and the zero row") {
  const CandidateBasis B = reciprocal_bin_basis(5);
  const ConstraintMatrix empty = build_constraint_matrix(B, std::vector<CrossPoint>{});
  CHECK(empty.entries.rows() == 0);
  CHECK(empty.entries.cols() == 10);
  const DefectEstimate e = defect_estimate(empty);
  CHECK(e.numerical_defect == 10);
  CHECK(e.nullvectors.size() == 10);
  CHECK(e.smallest_relative(3) == std::vector<double>{0.0, 0.0, 0.0});

  const ConstraintMatrix zero = build_constraint_matrix(B, {CrossPoint{1, 0, 0.0, 0.0}}, tight());
  for (int b = 0; b < 10; ++b) CHECK(std::abs(zero.entries(0, b) - 0.2) <= 1e-12);
  const DefectEstimate z = defect_estimate(zero);
  CHECK(z.numerical_defect == 9);
  CHECK(z.singular_values.size() == 1);
  CHECK(z.sigma_max == doctest::Approx(0.2 * std::sqrt(10.0)).epsilon(1e-12));

  CHECK_THROWS_AS(defect_estimate(zero, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(defect_estimate(zero, 1.0), std::invalid_argument);
  ConstraintMatrix failed = zero;
  failed.failures.push_back("entry (0,0)");
  CHECK_THROWS_AS(defect_estimate(failed), QuadratureError);
}

TEST_CASE("one-branch defect separates gamma = 1 from gamma < 1") {
  const int M = 30, J = 120;
  const CandidateBasis B = reciprocal_bin_basis(M);
  const DefectEstimate critical =
      defect_estimate(build_constraint_matrix(B, one_branch_cross(1.0, J, J), tight()));
  CHECK(critical.numerical_defect == 1);
  REQUIRE(critical.nullvectors.size() == 1);
  const Eigen::VectorXcd target = B.project(critical_annihilator(), tight());
  CHECK(cosine_similarity(critical.nullvectors.front(), target) >= 0.99);

  const DefectEstimate below =
      defect_estimate(build_constraint_matrix(B, one_branch_cross(0.8, J, J), tight()));
  CHECK(below.numerical_defect == 0);
  CHECK(below.smallest_relative(1).front() >= 10 * critical.smallest_relative(1).front());
}

TEST_CASE("defect is invariant under rescaling the basis and the cross") {
  const int M = 6;
  const double c = 1.7;
  LatticeCross base = one_branch_cross(0.9, 8, 8);
  LatticeCross scaled = base;
  scaled.alpha /= c;
  scaled.beta *= c;
  const DefectEstimate a = defect_estimate(build_constraint_matrix(reciprocal_bin_basis(M), base, tight()));
  const DefectEstimate b =
      defect_estimate(build_constraint_matrix(reciprocal_bin_basis(M, 2 * oracle::pi, c), scaled, tight()));
  REQUIRE(a.singular_values.size() == b.singular_values.size());
  for (size_t i = 0; i < a.singular_values.size(); ++i)
    CHECK(a.singular_values[i] == doctest::Approx(b.singular_values[i]).epsilon(1e-8));
}

TEST_CASE("adding rows interlaces the singular values") {
  const CandidateBasis B = reciprocal_bin_basis(6);
  const DefectEstimate small = defect_estimate(build_constraint_matrix(B, one_branch_cross(0.9, 4, 4), tight()));
  const DefectEstimate large = defect_estimate(build_constraint_matrix(B, one_branch_cross(0.9, 8, 8), tight()));
  REQUIRE(small.singular_values.size() == large.singular_values.size());
  for (size_t i = 0; i < small.singular_values.size(); ++i)
    CHECK(large.singular_values[i] >= small.singular_values[i] * (1 - 1e-12));
}

TEST_CASE("nullvector residual through the lifted measure") {
  const CandidateBasis B = spectral_hat_basis(6, oracle::pi / 4, 2 * oracle::pi);
  const DistortedCrossResult r = distorted_cross_residual(B, 1.0, 0.0, 1.0, 1.0, 3, 20, 2e-2, tight());
  CHECK(r.matrix.failures.empty());
  REQUIRE(r.estimate.numerical_defect >= 1);
  const double smallest = r.estimate.smallest_relative(1).front() * r.estimate.sigma_max;
  CHECK(r.nullvector_residual <= r.estimate.threshold * r.estimate.sigma_max);
  CHECK(r.nullvector_residual <= smallest + 1e-8);
  const Eigen::VectorXcd Av = r.matrix.entries * r.estimate.nullvectors.back();
  CHECK(std::abs(r.nullvector_residual - Av.cwiseAbs().maxCoeff()) <= 1e-8);

  CHECK_THROWS_AS(distorted_cross_residual(B, 1.0, 0.0, 2.0, 1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("twist shifts the transform") {
  const double m = 2 * oracle::pi, x1 = 0.6, x2 = -0.8;
  const auto base = [](double t) { return cplx(1 + t); };
  const Measure1D plain({}, {DensityPiece::elementary(0.5, 2.0, base, 10.0)});
  const Measure1D twisted({}, {DensityPiece::elementary(
                                  0.5, 2.0, [&](double t) { return base(t) * twist(x1, x2, m, t); }, 10.0)});
  for (auto [a, b] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {-2.0, 0.5}}) {
    const FtValue u = ft_point(HyperbolaMeasure(m, twisted), a, b, tight());
    const FtValue v = ft_point(HyperbolaMeasure(m, plain), a - x1, b - x2, tight());
    CHECK(std::abs(u.value - v.value) <= 1e-10);
  }
  CHECK(std::abs(twist(x1, x2, m, 0.3)) == doctest::Approx(1.0));
}

TEST_CASE("sweep and calibration") {
  const CandidateBasis B = reciprocal_bin_basis(8);
  CHECK(sweep_gamma(B, {}, 10, 10, 3).empty());
  const auto rows = sweep_gamma(B, {0.8, -1.0}, 16, 16, 3);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].ok);
  CHECK(rows[0].sigmas.size() == 3);
  CHECK(std::is_sorted(rows[0].sigmas.begin(), rows[0].sigmas.end()));
  CHECK_FALSE(rows[1].ok);
  CHECK(rows[1].defect == -1);
  CHECK_FALSE(rows[1].message.empty());

  const Calibration cal = calibrate_truncation(B, 0.8, 8, 3, 0.05, tight());
  CHECK(cal.j_max >= 8);
  CHECK(cal.sigma_min > 0.0);
  CHECK(cal.relative_change == doctest::Approx(std::abs(cal.sigma_min_2 - cal.sigma_min) / cal.sigma_min_2));
  CHECK(cal.stable == (cal.relative_change <= 0.05));
  CHECK_THROWS_AS(calibrate_truncation(B, 0.8, 0), std::invalid_argument);
}

TEST_CASE("cosine similarity") {
  Eigen::VectorXcd v(3), w(3);
  v << 1.0, I, 2.0;
  w << 0.0, 0.0, 0.0;
  CHECK(cosine_similarity(v, (2.0 * I) * v) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cosine_similarity(v, w) == 0.0);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3), e2 = Eigen::VectorXcd::Zero(3);
  e1(0) = 1.0;
  e2(1) = 1.0;
  CHECK(cosine_similarity(e1, e2) == 0.0);
}
