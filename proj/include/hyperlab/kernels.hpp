#pragma once

// Grid-parallel kernels. Each OpenMP kernel has a `_serial` twin computing the
// same values in the same order; tests compare the two and the benchmark
// target times them.

#include <string>
#include <utility>
#include <vector>

#include "hyperlab/annihilator.hpp"
#include "hyperlab/fourier.hpp"
#include "hyperlab/gauss_map.hpp"
#include "hyperlab/ulam.hpp"

namespace hyperlab::kernels {

std::vector<CrossSample> evaluate_cross(const HyperbolaMeasure& mu,
                                        const std::vector<CrossPoint>& pts,
                                        const QuadratureSpec& q);
std::vector<CrossSample> evaluate_cross_serial(const HyperbolaMeasure& mu,
                                               const std::vector<CrossPoint>& pts,
                                               const QuadratureSpec& q);

std::vector<SpiralPoint> spiral_points(const std::vector<double>& xs);
std::vector<SpiralPoint> spiral_points_serial(const std::vector<double>& xs);

/// Per midpoint sample: the smallest k <= max_k with U^{2k}(x) in [lo, hi], or -1.
std::vector<int> first_even_hits(const GaussMap& map, double lo, double hi, int max_k, int grid_n);
std::vector<int> first_even_hits_serial(const GaussMap& map, double lo, double hi, int max_k,
                                        int grid_n);

using SparseRows = std::vector<std::vector<std::pair<int, double>>>;
SparseRows ulam_rows(double gamma, int n_bins);
SparseRows ulam_rows_serial(double gamma, int n_bins);

/// w = v P.
void left_multiply(const UlamOperator& op, const std::vector<double>& v, std::vector<double>& w);
void left_multiply_serial(const UlamOperator& op, const std::vector<double>& v,
                          std::vector<double>& w);

/// Series values at the gridN midpoints of [0, 1).
std::vector<cplx> periodized_values(const PeriodizedSeries& s, int grid_n);
std::vector<cplx> periodized_values_serial(const PeriodizedSeries& s, int grid_n);

struct PairingEntry {
  cplx value;
  double error;
  std::string failure;  ///< empty on success
};

/// ftPoint of every measure at every point, row-major (point index outer).
std::vector<PairingEntry> pairing_grid(const std::vector<HyperbolaMeasure>& elements,
                                       const std::vector<CrossPoint>& pts, const QuadratureSpec& q);
std::vector<PairingEntry> pairing_grid_serial(const std::vector<HyperbolaMeasure>& elements,
                                              const std::vector<CrossPoint>& pts,
                                              const QuadratureSpec& q);

/// out[i] = f(i) for i < n. The first exception thrown by any f(i), lowest
/// index first, is rethrown after the loop.
template <class T, class F>
std::vector<T> map_indexed(int n, const F& f);
template <class T, class F>
std::vector<T> map_indexed_serial(int n, const F& f);

}  // namespace hyperlab::kernels

#include "hyperlab/kernels_impl.hpp"
