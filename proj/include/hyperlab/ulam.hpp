#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "hyperlab/measure.hpp"

namespace hyperlab {

/// Ulam matrix of U_gamma on nBins uniform bins of [0, 1), in CSR form.
/// Entry (i, j) is the fraction of bin i that U_gamma maps into bin j.
struct UlamOperator {
  double gamma = 1.0;
  int n_bins = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<int> col;
  std::vector<double> val;
  // Transposed copy (CSC of the matrix) for gathering in v -> vP.
  std::vector<std::int64_t> col_ptr;
  std::vector<int> row_of;
  std::vector<double> val_t;

  std::size_t nnz() const { return val.size(); }
  double entry(int i, int j) const;
  double max_row_sum_error() const;
  double min_entry() const;
};

/// Rough upper bound on stored entries, used for the memory guard.
double ulam_nnz_estimate(double gamma, int n_bins);

/// Builds the operator from the exact branch inverses t = gamma / (y + k).
/// Blocks of whole branches are summed in closed form through digamma
/// differences, including the infinitely many branches inside the first bin.
/// Throws std::length_error when the matrix would not fit the memory budget.
UlamOperator build_ulam(double gamma, int n_bins);

struct InvariantDensity {
  double gamma = 1.0;
  std::vector<double> values;  ///< density on bin i = [i/n, (i+1)/n)
  double residual = 0.0;       ///< ||pi P - pi||_1 at exit
  int iterations = 0;

  int n_bins() const { return static_cast<int>(values.size()); }
  double left(int i) const { return static_cast<double>(i) / n_bins(); }
  double right(int i) const { return static_cast<double>(i + 1) / n_bins(); }
  double integral() const;
  /// int_0^x density for x in [0, 1] (clamped outside).
  double cdf(double x) const;
  /// The density as a measure on [0, 1).
  Measure1D measure() const;
};

/// Left Perron vector by power iteration with L1 normalization.
/// Throws std::runtime_error carrying the last residual after max_iter steps.
InvariantDensity invariant_density(const UlamOperator& op, double tol = 1e-12,
                                   int max_iter = 100000);

/// Bin averages of a density given through its antiderivative on [0, 1].
InvariantDensity density_from_cdf(double gamma, int n_bins, const std::function<double(double)>& cdf);

/// Largest deviation, over grid_n uniform test bins, between the bin average
/// of the density and the bin average of its transfer image
/// sum_k rho(gamma/(t+k)) gamma/(t+k)^2.
double invariance_residual(const InvariantDensity& rho, int grid_n);

namespace detail {
/// Sorted (column, value) entries of row i.
std::vector<std::pair<int, double>> ulam_row(double gamma, int n_bins, int i);
}

}  // namespace hyperlab
