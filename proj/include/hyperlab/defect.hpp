#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hyperlab/fourier.hpp"

namespace hyperlab {

/// Finite family of candidate measures on the hyperbola, given through pi1.
///
/// reciprocal_bins: M unit-density bins on [0, c) and M bins uniform in
/// u = c/t on (0, 1], i.e. density c/t^2 on [c/u_b, c/u_a). The second family
/// is graded towards infinity; c = scale.
///
/// spectral_hats: elements with Fourier spectrum a hat of half-width delta
/// centred at n delta, 0 < |n| <= N, i.e. delta sinc^2(delta t/2) e^{i n delta t}
/// on the whole line. Every element has mass zero and an integrable Hilbert
/// transform.
struct CandidateBasis {
  enum class Kind { reciprocal_bins, spectral_hats };
  Kind kind = Kind::reciprocal_bins;
  int per_side = 0;
  double m = 2 * kPi;
  double scale = 1.0;
  double delta = 0.0;

  int size() const { return 2 * per_side; }
  Measure1D element(int b) const;
  /// sum_b coeffs[b] element(b) as one measure.
  Measure1D lift(const Eigen::VectorXcd& coeffs) const;
  /// Averages of nu over each element's support, in the element's own
  /// coordinate (reciprocal_bins only).
  Eigen::VectorXcd project(const Measure1D& nu, const QuadratureSpec& q = {}) const;
  /// Spectral centre of element b (spectral_hats only).
  double centre(int b) const;
};

CandidateBasis reciprocal_bin_basis(int bins_per_side, double m = 2 * kPi, double scale = 1.0);
CandidateBasis spectral_hat_basis(int hats_per_side, double delta, double m);

struct ConstraintMatrix {
  std::vector<CrossPoint> rows;
  Eigen::MatrixXcd entries;
  double max_error = 0.0;
  std::vector<std::string> failures;
};

/// Entry (r, b) is ftPoint of element b lifted to Gamma_m at the r-th point.
/// Quadrature failures are collected in `failures` rather than thrown.
ConstraintMatrix build_constraint_matrix(const CandidateBasis& basis,
                                         const std::vector<CrossPoint>& rows,
                                         const QuadratureSpec& q = {});
ConstraintMatrix build_constraint_matrix(const CandidateBasis& basis, const LatticeCross& cross,
                                         const QuadratureSpec& q = {});

struct DefectEstimate {
  std::vector<double> singular_values;  ///< descending, length min(rows, cols)
  double sigma_max = 0.0;
  double threshold = 0.0;  ///< relative to sigma_max
  int numerical_defect = 0;
  std::vector<Eigen::VectorXcd> nullvectors;  ///< unit coefficient vectors
  int n_basis = 0;

  /// sigma_i / sigma_max in ascending order, padded with zeros for the
  /// columns beyond the row count.
  std::vector<double> smallest_relative(int k) const;
};

inline constexpr double kDefaultDefectThreshold = 2e-2;

/// Singular values by a divide-and-conquer SVD. numericalDefect counts the
/// right-singular directions with sigma <= threshold * sigma_max, including
/// the n_basis - n_rows directions a short matrix cannot see.
/// Throws std::invalid_argument for threshold outside (0, 1) or on a matrix
/// with recorded quadrature failures.
DefectEstimate defect_estimate(const ConstraintMatrix& mat,
                               double threshold = kDefaultDefectThreshold);

/// The rescaled one-branch cross for gamma: alpha = 2, beta = 2 gamma, m = 2 pi,
/// |j| <= J, |k| <= K, so the rows are e^{2 pi i j t} and e^{2 pi i gamma k / t}.
LatticeCross one_branch_cross(double gamma, int j_max, int k_max);

struct SweepRow {
  double gamma;
  std::vector<double> sigmas;  ///< smallest relative singular values, ascending
  int defect;
  bool ok;
  std::string message;
};

std::vector<SweepRow> sweep_gamma(const CandidateBasis& basis, const std::vector<double>& gammas,
                                  int j_max, int k_max, int n_sigmas,
                                  double threshold = kDefaultDefectThreshold,
                                  const QuadratureSpec& q = {});

struct Calibration {
  int j_max;           ///< accepted truncation (J = K)
  double sigma_min;    ///< smallest relative singular value at j_max
  double sigma_min_2;  ///< same at 2 j_max
  double relative_change;
  bool stable;  ///< relative_change <= tolerance
};

/// Doubles J = K from j_start until the smallest relative singular value at
/// the gamma calibration point moves by at most `tolerance` when doubled.
Calibration calibrate_truncation(const CandidateBasis& basis, double gamma, int j_start,
                                 int max_doublings = 3, double tolerance = 0.05,
                                 const QuadratureSpec& q = {});

/// |<v, w>| / (|v| |w|).
double cosine_similarity(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w);

/// U_{xi0}(t) = exp(-i pi [xi1 t - m^2 xi2 / (4 pi^2 t)]).
cplx twist(double xi1, double xi2, double m, double t);

/// Rows of the distorted lattice-cross: the closed (--) quadrant part with
/// j, k in [-J, 0], [-K, 0], then the (++) part with j, k in [0, J], [0, K]
/// translated by xi0.
std::vector<CrossPoint> distorted_cross_points(double xi1, double xi2, double alpha, double beta,
                                               int j_max, int k_max);

struct DistortedCrossResult {
  DefectEstimate estimate;
  ConstraintMatrix matrix;
  /// Largest |ftPoint| over the rows of the lifted first nullvector
  /// (0 when the defect is 0).
  double nullvector_residual;
};

/// Requires alpha beta m^2 <= 4 pi^2 (std::invalid_argument otherwise).
DistortedCrossResult distorted_cross_residual(const CandidateBasis& basis, double xi1, double xi2,
                                              double alpha, double beta, int j_max, int k_max,
                                              double threshold = kDefaultDefectThreshold,
                                              const QuadratureSpec& q = {});

/// max over rows of |ftPoint(lift(v), row)|, evaluated by quadrature on the
/// lifted measure rather than through the matrix.
double lifted_cross_residual(const CandidateBasis& basis, const Eigen::VectorXcd& v,
                             const std::vector<CrossPoint>& rows, const QuadratureSpec& q = {});

}  // namespace hyperlab
