#include "hyperlab/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hyperlab/kernels.hpp"
#include "hyperlab/special.hpp"

namespace hyperlab {

namespace {

constexpr double kMemoryBudgetBytes = 2.0e9;

// Preimage length of the fractional window [ua, ub) under branch k,
// spread over the target bins it touches.
void partial_block(double gamma, int n, double k, double ua, double ub,
                   std::vector<std::pair<int, double>>& out) {
  if (!(ub > ua)) return;
  const int c0 = std::max(0, static_cast<int>(std::floor(ua * n)));
  const int c1 = std::min(n - 1, static_cast<int>(std::ceil(ub * n)) - 1);
  for (int c = c0; c <= c1; ++c) {
    const double p = std::max(ua, static_cast<double>(c) / n);
    const double q = std::min(ub, static_cast<double>(c + 1) / n);
    if (q > p) out.emplace_back(c, gamma * (q - p) / ((k + p) * (k + q)));
  }
}

}  // namespace

namespace detail {

std::vector<std::pair<int, double>> ulam_row(double gamma, int n, int i) {
  const double x0 = static_cast<double>(i) / n;
  const double x1 = static_cast<double>(i + 1) / n;
  const double y_lo = gamma / x1;
  const double y_hi = i == 0 ? kInf : gamma / x0;
  const double ka = std::floor(y_lo);
  double kb = std::isinf(y_hi) ? kInf : std::floor(y_hi);
  double ub = std::isinf(y_hi) ? 0.0 : y_hi - kb;
  if (ub == 0.0 && !std::isinf(kb)) {
    kb -= 1.0;
    ub = 1.0;
  }

  std::vector<std::pair<int, double>> raw;
  if (ka == kb) {
    partial_block(gamma, n, ka, y_lo - ka, ub, raw);
  } else {
    partial_block(gamma, n, ka, y_lo - ka, 1.0, raw);
    if (!std::isinf(kb)) partial_block(gamma, n, kb, 0.0, ub, raw);
    const double first_full = ka + 1.0;
    if (std::isinf(kb) || kb - 1.0 >= first_full) {
      const double h = 1.0 / n;
      for (int c = 0; c < n; ++c) {
        const double a = static_cast<double>(c) / n;
        double len = digamma_diff(first_full + a, h);
        if (!std::isinf(kb)) len -= digamma_diff(kb + a, h);
        raw.emplace_back(c, gamma * len);
      }
    }
  }

  std::sort(raw.begin(), raw.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<std::pair<int, double>> row;
  for (const auto& [c, v] : raw) {
    if (!row.empty() && row.back().first == c)
      row.back().second += v;
    else
      row.emplace_back(c, v);
  }
  for (auto& e : row) e.second *= n;
  return row;
}

}  // namespace detail

double UlamOperator::entry(int i, int j) const {
  const auto b = col.begin() + row_ptr[i], e = col.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(b, e, j);
  return (it != e && *it == j) ? val[static_cast<size_t>(it - col.begin())] : 0.0;
}

double UlamOperator::max_row_sum_error() const {
  double worst = 0.0;
  for (int i = 0; i < n_bins; ++i) {
    double s = 0.0;
    for (auto p = row_ptr[i]; p < row_ptr[i + 1]; ++p) s += val[p];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

double UlamOperator::min_entry() const {
  return val.empty() ? 0.0 : *std::min_element(val.begin(), val.end());
}

double ulam_nnz_estimate(double gamma, int n_bins) {
  const double n = n_bins;
  return 2.0 * n * std::sqrt(std::max(gamma, 1.0) * n) + 5.0 * n;
}

UlamOperator build_ulam(double gamma, int n_bins) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("build_ulam: gamma must be positive");
  if (n_bins < 2) throw std::invalid_argument("build_ulam: nBins must be >= 2");
  const double bytes = ulam_nnz_estimate(gamma, n_bins) * 2 * (sizeof(double) + sizeof(int));
  if (bytes > kMemoryBudgetBytes)
    throw std::length_error("build_ulam: nBins=" + std::to_string(n_bins) +
                            " exceeds the memory budget");

  UlamOperator op;
  op.gamma = gamma;
  op.n_bins = n_bins;
  const auto rows = kernels::ulam_rows(gamma, n_bins);

  op.row_ptr.assign(static_cast<size_t>(n_bins) + 1, 0);
  for (int i = 0; i < n_bins; ++i)
    op.row_ptr[i + 1] = op.row_ptr[i] + static_cast<std::int64_t>(rows[i].size());
  op.col.reserve(op.row_ptr.back());
  op.val.reserve(op.row_ptr.back());
  for (const auto& r : rows)
    for (const auto& [c, v] : r) {
      op.col.push_back(c);
      op.val.push_back(v);
    }

  op.col_ptr.assign(static_cast<size_t>(n_bins) + 1, 0);
  for (int c : op.col) ++op.col_ptr[c + 1];
  for (int j = 0; j < n_bins; ++j) op.col_ptr[j + 1] += op.col_ptr[j];
  op.row_of.resize(op.col.size());
  op.val_t.resize(op.col.size());
  std::vector<std::int64_t> fill(op.col_ptr.begin(), op.col_ptr.end() - 1);
  for (int i = 0; i < n_bins; ++i)
    for (auto p = op.row_ptr[i]; p < op.row_ptr[i + 1]; ++p) {
      const auto dst = fill[op.col[p]]++;
      op.row_of[dst] = i;
      op.val_t[dst] = op.val[p];
    }
  return op;
}

double InvariantDensity::integral() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s / n_bins();
}

double InvariantDensity::cdf(double x) const {
  const int n = n_bins();
  if (x <= 0.0) return 0.0;
  x = std::min(x, 1.0);
  int idx = std::min(n - 1, static_cast<int>(x * n));
  double s = 0.0;
  for (int i = 0; i < idx; ++i) s += values[i];
  return s / n + values[idx] * (x - left(idx));
}

Measure1D InvariantDensity::measure() const { return Measure1D({}, {uniform_bins_piece(0.0, 1.0, values)}); }

InvariantDensity invariant_density(const UlamOperator& op, double tol, int max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("invariant_density: tol must be positive");
  const int n = op.n_bins;
  std::vector<double> v(n, 1.0 / n), w(n);
  double res = kInf;
  int it = 0;
  while (it < max_iter) {
    kernels::left_multiply(op, v, w);
    double mass = 0.0;
    for (double x : w) mass += x;
    res = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] /= mass;
      res += std::abs(w[i] - v[i]);
    }
    v.swap(w);
    ++it;
    if (res <= tol) break;
  }
  if (res > tol)
    throw std::runtime_error("invariant_density: no convergence after " + std::to_string(it) +
                             " iterations, residual " + std::to_string(res));
  InvariantDensity d;
  d.gamma = op.gamma;
  d.values.resize(n);
  for (int i = 0; i < n; ++i) d.values[i] = v[i] * n;
  d.residual = res;
  d.iterations = it;
  return d;
}

InvariantDensity density_from_cdf(double gamma, int n_bins, const std::function<double(double)>& cdf) {
  InvariantDensity d;
  d.gamma = gamma;
  d.values.resize(n_bins);
  for (int i = 0; i < n_bins; ++i)
    d.values[i] = (cdf(static_cast<double>(i + 1) / n_bins) - cdf(static_cast<double>(i) / n_bins)) * n_bins;
  return d;
}

double invariance_residual(const InvariantDensity& rho, int grid_n) {
  if (grid_n < 1) throw std::invalid_argument("invariance_residual: gridN must be >= 1");
  const int n = rho.n_bins();
  std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + rho.values[i] / n;
  auto F = [&](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return prefix[n];
    const int idx = std::min(n - 1, static_cast<int>(x * n));
    return prefix[idx] + rho.values[idx] * (x - static_cast<double>(idx) / n);
  };
  const double g = rho.gamma;
  const double first_edge = 1.0 / n;
  double worst = 0.0;
  for (int b = 0; b < grid_n; ++b) {
    const double lo = static_cast<double>(b) / grid_n, hi = static_cast<double>(b + 1) / grid_n;
    const double own = (F(hi) - F(lo)) / (hi - lo);
    // branches with gamma/(lo+k) <= first_edge see the linear part of F
    const double k_lin = std::max(1.0, std::ceil(g / first_edge - lo));
    const double k_start = std::max(0.0, std::floor(g - hi));
    double image = 0.0;
    for (double k = k_start; k < k_lin; k += 1.0)
      image += F(g / (lo + k)) - F(g / (hi + k));
    image += rho.values[0] * g * digamma_diff(k_lin + lo, hi - lo);
    image /= (hi - lo);
    worst = std::max(worst, std::abs(own - image));
  }
  return worst;
}

}  // namespace hyperlab
