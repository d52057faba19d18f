#include "hyperlab/kernels.hpp"

#include <string>

namespace hyperlab::kernels {

namespace {

CrossSample cross_sample(const HyperbolaMeasure& mu, const CrossPoint& p, const QuadratureSpec& q) {
  try {
    return {p, ft_point(mu, p.xi1, p.xi2, q)};
  } catch (const QuadratureError& e) {
    throw QuadratureError("cross point axis " + std::to_string(p.axis) + " index " +
                              std::to_string(p.index) + ": " + e.what(),
                          e.achieved_error());
  }
}

SpiralPoint spiral_point(double x) {
  const SiCi s = sici(x);
  return {x, s.ci, s.si_tail};
}

int first_even_hit(const GaussMap& map, double lo, double hi, int max_k, double x) {
  for (int k = 0; k <= max_k; ++k) {
    if (x >= lo && x <= hi) return k;
    if (k == max_k) break;
    x = map.step(map.step(x));
  }
  return -1;
}

double midpoint(int i, int n) { return (i + 0.5) / n; }

PairingEntry pairing_entry(const std::vector<HyperbolaMeasure>& elements,
                           const std::vector<CrossPoint>& pts, const QuadratureSpec& q, int idx) {
  const int nb = static_cast<int>(elements.size());
  const CrossPoint& p = pts[static_cast<size_t>(idx / nb)];
  try {
    const FtValue v = ft_point(elements[static_cast<size_t>(idx % nb)], p.xi1, p.xi2, q);
    return {v.value, v.error, {}};
  } catch (const QuadratureError& e) {
    return {0.0, e.achieved_error(),
            "row axis " + std::to_string(p.axis) + " index " + std::to_string(p.index) +
                ", element " + std::to_string(idx % nb) + ": " + e.what()};
  }
}

}  // namespace

std::vector<CrossSample> evaluate_cross(const HyperbolaMeasure& mu,
                                        const std::vector<CrossPoint>& pts,
                                        const QuadratureSpec& q) {
  return map_indexed<CrossSample>(static_cast<int>(pts.size()),
                                  [&](int i) { return cross_sample(mu, pts[i], q); });
}

std::vector<CrossSample> evaluate_cross_serial(const HyperbolaMeasure& mu,
                                               const std::vector<CrossPoint>& pts,
                                               const QuadratureSpec& q) {
  return map_indexed_serial<CrossSample>(static_cast<int>(pts.size()),
                                         [&](int i) { return cross_sample(mu, pts[i], q); });
}

std::vector<SpiralPoint> spiral_points(const std::vector<double>& xs) {
  return map_indexed<SpiralPoint>(static_cast<int>(xs.size()),
                                  [&](int i) { return spiral_point(xs[i]); });
}

std::vector<SpiralPoint> spiral_points_serial(const std::vector<double>& xs) {
  return map_indexed_serial<SpiralPoint>(static_cast<int>(xs.size()),
                                         [&](int i) { return spiral_point(xs[i]); });
}

std::vector<int> first_even_hits(const GaussMap& map, double lo, double hi, int max_k, int grid_n) {
  std::vector<int> out(static_cast<size_t>(grid_n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid_n; ++i) out[i] = first_even_hit(map, lo, hi, max_k, midpoint(i, grid_n));
  return out;
}

std::vector<int> first_even_hits_serial(const GaussMap& map, double lo, double hi, int max_k,
                                        int grid_n) {
  std::vector<int> out(static_cast<size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) out[i] = first_even_hit(map, lo, hi, max_k, midpoint(i, grid_n));
  return out;
}

SparseRows ulam_rows(double gamma, int n_bins) {
  return map_indexed<std::vector<std::pair<int, double>>>(
      n_bins, [&](int i) { return detail::ulam_row(gamma, n_bins, i); });
}

SparseRows ulam_rows_serial(double gamma, int n_bins) {
  return map_indexed_serial<std::vector<std::pair<int, double>>>(
      n_bins, [&](int i) { return detail::ulam_row(gamma, n_bins, i); });
}

void left_multiply(const UlamOperator& op, const std::vector<double>& v, std::vector<double>& w) {
  w.assign(static_cast<size_t>(op.n_bins), 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < op.n_bins; ++j) {
    double s = 0.0;
    for (auto p = op.col_ptr[j]; p < op.col_ptr[j + 1]; ++p) s += v[op.row_of[p]] * op.val_t[p];
    w[j] = s;
  }
}

void left_multiply_serial(const UlamOperator& op, const std::vector<double>& v,
                          std::vector<double>& w) {
  // row-wise scatter over the CSR copy
  w.assign(static_cast<size_t>(op.n_bins), 0.0);
  for (int i = 0; i < op.n_bins; ++i)
    for (auto p = op.row_ptr[i]; p < op.row_ptr[i + 1]; ++p) w[op.col[p]] += v[i] * op.val[p];
}

std::vector<cplx> periodized_values(const PeriodizedSeries& s, int grid_n) {
  return map_indexed<cplx>(grid_n, [&](int i) { return s.at(midpoint(i, grid_n)); });
}

std::vector<cplx> periodized_values_serial(const PeriodizedSeries& s, int grid_n) {
  return map_indexed_serial<cplx>(grid_n, [&](int i) { return s.at(midpoint(i, grid_n)); });
}

std::vector<PairingEntry> pairing_grid(const std::vector<HyperbolaMeasure>& elements,
                                       const std::vector<CrossPoint>& pts, const QuadratureSpec& q) {
  const int n = static_cast<int>(elements.size() * pts.size());
  return map_indexed<PairingEntry>(n, [&](int i) { return pairing_entry(elements, pts, q, i); });
}

std::vector<PairingEntry> pairing_grid_serial(const std::vector<HyperbolaMeasure>& elements,
                                              const std::vector<CrossPoint>& pts,
                                              const QuadratureSpec& q) {
  const int n = static_cast<int>(elements.size() * pts.size());
  return map_indexed_serial<PairingEntry>(n,
                                          [&](int i) { return pairing_entry(elements, pts, q, i); });
}

}  // namespace hyperlab::kernels
