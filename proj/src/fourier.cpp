#include "hyperlab/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperlab/kernels.hpp"

namespace hyperlab {

void LatticeCross::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("LatticeCross: spacings must be positive");
  if (j_min > j_max + 1 || k_min > k_max + 1)
    throw std::invalid_argument("LatticeCross: malformed index range");
}

std::vector<CrossPoint> cross_points(const LatticeCross& c) {
  c.validate();
  std::vector<CrossPoint> pts;
  const bool centre_on_axis1 = c.j_min <= 0 && 0 <= c.j_max;
  for (int j = c.j_min; j <= c.j_max; ++j)
    pts.push_back({1, j, c.alpha * j + c.offset1, c.offset2});
  for (int k = c.k_min; k <= c.k_max; ++k) {
    if (k == 0 && centre_on_axis1) continue;
    pts.push_back({2, k, c.offset1, c.beta * k + c.offset2});
  }
  if (c.quadrant) {
    std::vector<CrossPoint> kept;
    for (const auto& p : pts)
      if (c.quadrant->contains(p.xi1, p.xi2)) kept.push_back(p);
    pts.swap(kept);
  }
  return pts;
}

FtValue ft_point(const HyperbolaMeasure& mu, double xi1, double xi2, const QuadratureSpec& q) {
  q.validate();
  const double omega = kPi * xi1;
  const double kappa = -kPi * mu.c() * xi2;
  const QuadResult r = pair(mu.pi1(), omega, kappa, q);
  if (!r.converged)
    throw QuadratureError("ft_point: no convergence at xi=(" + std::to_string(xi1) + "," +
                              std::to_string(xi2) + "), error estimate " + std::to_string(r.error),
                          r.error);
  return {r.value, r.error};
}

std::vector<CrossSample> ft_on_cross(const HyperbolaMeasure& mu, const LatticeCross& cross,
                                     const QuadratureSpec& q) {
  return kernels::evaluate_cross(mu, cross_points(cross), q);
}

double SpiralPoint::modulus() const { return std::hypot(ci, si); }

Spiral nielsen_spiral(const std::vector<double>& xs) {
  for (double x : xs)
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::domain_error("nielsen_spiral: grid must be positive and finite");
  Spiral s;
  s.points = kernels::spiral_points(xs);
  s.min_modulus = kInf;
  for (const auto& p : s.points) s.min_modulus = std::min(s.min_modulus, p.modulus());
  return s;
}

cplx critical_measure_ft(double x, SiciLimit limit) {
  if (x == std::round(x)) return 0.0;
  const double ax = std::abs(x);
  const double y = (limit == SiciLimit::two_pi_x) ? 2 * kPi * ax : ax;
  const SiCi sc = sici(y);
  const double sgn = x > 0 ? 1.0 : -1.0;
  const cplx tail(-sc.ci, sgn * sc.si_tail);  // int_1^inf e^{2 pi i x s} ds / s
  const cplx factor(std::cos(2 * kPi * x) - 1.0, -std::sin(2 * kPi * x));
  return factor * tail;
}

}  // namespace hyperlab
