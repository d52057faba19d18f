#pragma once

#include <utility>

#include "hyperlab/measure.hpp"
#include "hyperlab/ulam.hpp"

namespace hyperlab {

/// dnu = 1_[0,1) dt/(1+t) - 1_[1,inf) dt/(t(1+t)).
Measure1D critical_annihilator();

/// dnu(t) = drho(t) - drho(gamma/t) for gamma > 1, the second piece stored
/// as the exact pushforward of the binned density.
Measure1D expanded_annihilator(double gamma, const InvariantDensity& rho);

/// t -> sum_{j>=0} density(t + j) on [0, 1). Terms are summed directly up to
/// J (at least 1000 and past every breakpoint) and the remainder is the
/// midpoint Euler-Maclaurin tail int_{t+J-1/2}^inf + density'(t+J-1/2)/24.
class PeriodizedSeries {
 public:
  PeriodizedSeries(Measure1D nu, QuadratureSpec q = {});
  cplx at(double t) const;
  int terms() const { return terms_; }

 private:
  Measure1D nu_;
  QuadratureSpec q_;
  int terms_;
};

/// Sup over gridN midpoints of |sum_j nu'(t+j)| and of
/// |sum_j nu'(gamma/(t+j)) gamma/(t+j)^2|.
std::pair<double, double> periodized_residual(const Measure1D& nu, double gamma, int grid_n);

/// max |nu'(t) + nu'(gamma/t) gamma/t^2| over midpoints of (0,1) and their images.
double symmetry_residual(const Measure1D& nu, double gamma, int grid_n);

struct PerturbedResidual {
  double residual;
  bool gamma_endpoint;  ///< gamma == 2, where the endpoint convention is unresolved
};

/// Sup over gridN midpoints t of (0,1) of
///   |omega1'(t) - sum_{j>=1} omega1'(gamma/(t+j)) gamma/(t+j)^2 - omega2'(t+1)|.
/// Requires gamma in (1,2], omega1 on [0,1], omega2 on [1,gamma] with
/// omega2'(gamma/t) gamma/t^2 = -omega2'(t) to 1e-10; violations throw
/// std::invalid_argument.
PerturbedResidual perturbed_equation_residual(const Measure1D& omega1, const Measure1D& omega2,
                                              double gamma, int grid_n);

struct AnnihilatorReport {
  double gamma;
  Measure1D measure;
  double symmetry_residual;
  double periodized_residual_sum1;
  double periodized_residual_sum2;
  int grid_n;
  double total_mass;
};

AnnihilatorReport annihilator_report(const Measure1D& nu, double gamma, int grid_n);
json to_json(const AnnihilatorReport& r);

}  // namespace hyperlab
