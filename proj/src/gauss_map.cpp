#include "hyperlab/gauss_map.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperlab/kernels.hpp"

namespace hyperlab {

GaussMap::GaussMap(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("GaussMap: gamma must be positive and finite");
}

double GaussMap::step(double x, bool* snapped) const {
  if (!(x >= 0.0 && x < 1.0)) throw std::domain_error("GaussMap::step: x outside [0,1)");
  if (snapped) *snapped = false;
  if (x == 0.0) return 0.0;
  const double y = gamma_ / x;
  const double r = std::round(y);
  if (r >= 1.0 && std::abs(y - r) <= kBranchSnap * y) {
    if (snapped) *snapped = (y != r);
    return 0.0;
  }
  const double f = y - std::floor(y);
  return f < 1.0 ? f : 0.0;
}

std::vector<double> GaussMap::orbit(double x0, int n) const {
  if (n < 0) throw std::invalid_argument("GaussMap::orbit: n must be nonnegative");
  if (!(x0 >= 0.0 && x0 < 1.0)) throw std::domain_error("GaussMap::orbit: x0 outside [0,1)");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n) + 1);
  out.push_back(x0);
  double x = x0;
  for (int i = 0; i < n; ++i) out.push_back(x = step(x));
  return out;
}

std::optional<double> GaussMap::branch_inverse(double y, int j) const {
  if (!(y >= 0.0 && y < 1.0)) throw std::domain_error("GaussMap::branch_inverse: y outside [0,1)");
  if (j < 1) throw std::domain_error("GaussMap::branch_inverse: j must be >= 1");
  const double x = gamma_ / (y + j);
  if (x > 0.0 && x < 1.0) return x;
  return std::nullopt;
}

std::vector<double> coverage_fraction(const GaussMap& map, double lo, double hi,
                                      int max_even_iterates, int grid_n) {
  if (grid_n < 1) throw std::invalid_argument("coverage_fraction: gridN must be >= 1");
  if (max_even_iterates < 0) throw std::invalid_argument("coverage_fraction: maxEvenIterates < 0");
  if (!(lo <= hi)) throw std::invalid_argument("coverage_fraction: empty target interval");
  const std::vector<int> hits = kernels::first_even_hits(map, lo, hi, max_even_iterates, grid_n);
  std::vector<long long> count(static_cast<size_t>(max_even_iterates) + 1, 0);
  for (int h : hits)
    if (h >= 0) ++count[static_cast<size_t>(h)];
  std::vector<double> frac(count.size());
  long long acc = 0;
  for (size_t k = 0; k < count.size(); ++k) {
    acc += count[k];
    frac[k] = static_cast<double>(acc) / grid_n;
  }
  return frac;
}

}  // namespace hyperlab
