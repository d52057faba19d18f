#pragma once

#include <vector>

#include "hyperlab/measure.hpp"

namespace hyperlab {

/// Density on the whole line as two pieces, (-inf, 0) and [0, inf).
/// `breaks` lists jump points of fn; tv_bound may be kInf when unknown.
Measure1D line_density(ComplexFn fn, double tv_bound, std::vector<double> breaks = {});

/// Samples of a 2-periodic function on x_i = -1 + 2i/N, i < N.
struct PeriodicFunction2 {
  std::vector<cplx> samples;
  int size() const { return static_cast<int>(samples.size()); }
  double x(int i) const { return -1.0 + 2.0 * i / size(); }
  /// (1/2) int_{[-1,1)} g by the periodic trapezoid rule.
  cplx mean() const;
};

/// Q2 f(x) = sum_j f(x + 2j) on the sampling grid. Direct terms for |j| <= J,
/// midpoint Euler-Maclaurin tails on both sides.
PeriodicFunction2 periodize_q2(const Measure1D& f, int grid_n, const QuadratureSpec& q = {});

/// J_{beta,p} f(x) = beta^{1/p} |x|^{-2/p} theta_p(x) f(-beta/x), with
/// theta_p = 1 for x > 0 and exp(-2 pi i / p) for x < 0. For p = 1 this is the
/// exact pushforward under x -> -beta/x. Throws std::domain_error on an atom at 0.
Measure1D inversion_j(const Measure1D& f, double beta, double p = 1.0);

struct FourierCoefficients {
  int n_max;
  std::vector<cplx> c;  ///< c[n + n_max] for |n| <= n_max
  cplx at(int n) const { return c[static_cast<size_t>(n + n_max)]; }
};

/// c_n = (1/2) int_{[-1,1)} g(x) e^{-i pi n x} dx on the sampling grid.
FourierCoefficients fourier_coeffs_periodic(const PeriodicFunction2& g, int n_max);

struct HardyDefect {
  double neg_mass;     ///< sum_{n<0} |c_n|
  double nonpos_mass;  ///< sum_{n<=0} |c_n|
  double pos_mass;     ///< sum_{n>0} |c_n|
  double total_mass;
  double ratio;         ///< neg_mass / total_mass
  double ratio_nonpos;  ///< nonpos_mass / total_mass
};

HardyDefect hardy_defect(const Measure1D& f, int n_max, int grid_n = 4096,
                         const QuadratureSpec& q = {});
HardyDefect hardy_defect(const FourierCoefficients& c);

struct HilbertSample {
  double x;
  cplx value;
  double error;  ///< |H_h - H_{h/2}| plus quadrature estimates
  bool converged;
};

/// (1/pi) PV int f(t) / (x - t) dt by symmetric excision:
///   int_0^h (f(x-s) - f(x+s))/s ds  (Gauss-Legendre)  +  the outer remainder
/// (adaptive, split at jump points), repeated with h/2.
HilbertSample hilbert_at(const Measure1D& f, double x, double h, const QuadratureSpec& q = {});
std::vector<HilbertSample> hilbert_line(const Measure1D& f, const std::vector<double>& xs,
                                        const QuadratureSpec& q = {});

/// Hilbert transform of a density as a measure on the line (each density
/// value is a PV quadrature), for Fourier checks of the transformed object.
Measure1D hilbert_line_measure(const Measure1D& f, const QuadratureSpec& q = {});

/// Both compressions of H_Gamma nu sampled on a grid: the pi1 route is
/// H[pi1 nu](x); the pi2 route is H[pi2 nu](x). `pi2_from_pi1` is the pi1
/// route carried to the second axis, c/x^2 H[pi1 nu](-c/x).
struct HilbertGamma {
  std::vector<double> xs;
  std::vector<HilbertSample> pi1;
  std::vector<HilbertSample> pi2;
  std::vector<cplx> pi2_from_pi1;
  double route_gap;  ///< max |pi2 - pi2_from_pi1|
  double route_tol;  ///< combined error estimate at the worst point
};

/// Throws std::invalid_argument when |total mass| > 1e-10 or an atom is present.
HilbertGamma hilbert_hyperbola(const HyperbolaMeasure& nu, const std::vector<double>& xs,
                               const QuadratureSpec& q = {});

struct AxisSample {
  double xi1;
  cplx transformed;  ///< FT of H_Gamma nu at (xi1, 0)
  cplx expected;     ///< i sgn(xi1) nu^(xi1, 0)
  double gap;
  double error;
};

/// Sign identity on the first axis: the transform of H_Gamma nu at (xi1, 0)
/// against i sgn(xi1) nu^(xi1, 0). Same preconditions as hilbert_hyperbola.
std::vector<AxisSample> hilbert_axis_check(const HyperbolaMeasure& nu,
                                           const std::vector<double>& xi1s,
                                           const QuadratureSpec& q = {});

struct Pairing {
  char kind;  ///< 'j' or 'k'
  int index;
  cplx value;
  double error;
};

struct TimelikeWitness {
  std::vector<Pairing> pairings;
  double l1_norm;
};

/// f(t) = 1/(t - z0) - 1/(t - 2 - z0) paired with e^{i pi j t} (j <= jMax) and
/// e^{i pi beta k / t} (k <= kMax). Throws std::domain_error when Im z0 <= 0.
TimelikeWitness timelike_witness(cplx z0, double beta, int j_max, int k_max,
                                 const QuadratureSpec& q = {});

}  // namespace hyperlab
