#pragma once

#include <optional>
#include <vector>

#include "hyperlab/measure.hpp"

namespace hyperlab {

/// Finite window of the lattice-cross (alpha Z x {0}) u ({0} x beta Z),
/// optionally translated by `offset` and filtered to a quadrant.
struct LatticeCross {
  double alpha = 1.0;
  double beta = 1.0;
  int j_min = 0, j_max = 0;
  int k_min = 0, k_max = 0;
  double offset1 = 0.0, offset2 = 0.0;
  std::optional<QuadrantTag> quadrant;

  void validate() const;
};

struct CrossPoint {
  int axis;   ///< 1 for (alpha j, 0), 2 for (0, beta k)
  int index;  ///< j or k
  double xi1, xi2;
};

/// Points in deterministic order: axis 1 by ascending j, then axis 2 by
/// ascending k. The axis-2 copy of the centre is dropped when axis 1 already
/// emits it; the quadrant filter is applied last.
std::vector<CrossPoint> cross_points(const LatticeCross& cross);

struct FtValue {
  cplx value;
  double error;
};

/// Fourier transform of a hyperbola measure at xi, with the convention
///   mu^(xi) = int exp(pi i [xi1 t - m^2 xi2 / (4 pi^2 t)]) d(pi1 mu)(t).
/// Throws QuadratureError when the tolerance is missed.
FtValue ft_point(const HyperbolaMeasure& mu, double xi1, double xi2, const QuadratureSpec& q);

struct CrossSample {
  CrossPoint point;
  FtValue ft;
};

/// ft_point over every cross point; a failure is rethrown naming the point.
std::vector<CrossSample> ft_on_cross(const HyperbolaMeasure& mu, const LatticeCross& cross,
                                     const QuadratureSpec& q);

struct SpiralPoint {
  double x;
  double ci;
  double si;  ///< int_x^inf sin(y)/y dy
  double modulus() const;
};

struct Spiral {
  std::vector<SpiralPoint> points;
  double min_modulus;
};

Spiral nielsen_spiral(const std::vector<double>& xs);

/// Which lower limit the si/ci reduction of the critical transform uses.
enum class SiciLimit { two_pi_x, abs_x };

/// nu^(x) = int_0^inf e^{2 pi i x t} dnu(t) for the critical annihilator,
/// evaluated as (e^{-2 pi i x} - 1)(-Ci(y) + i sgn(x) si(y)) with y = 2 pi |x|.
/// Returns exactly 0 at integers. `abs_x` substitutes y = |x|.
cplx critical_measure_ft(double x, SiciLimit limit = SiciLimit::two_pi_x);

}  // namespace hyperlab
