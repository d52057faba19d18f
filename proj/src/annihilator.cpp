#include "hyperlab/annihilator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperlab/kernels.hpp"
#include "hyperlab/serialize.hpp"

namespace hyperlab {

namespace {

constexpr int kMinTerms = 1000;
constexpr double kAntisymmetryTol = 1e-10;

double midpoint(int i, int n) { return (i + 0.5) / n; }

double sup_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

void require_no_atoms(const Measure1D& nu, const char* who) {
  if (!nu.atoms().empty())
    throw std::invalid_argument(std::string(who) + ": atoms have no pointwise density");
}

}  // namespace

Measure1D critical_annihilator() {
  const DensityPiece head = reciprocal1p_piece(0.0, 1.0);
  return Measure1D({}, {head, head.inverted(1.0).scaled(-1.0)});
}

Measure1D expanded_annihilator(double gamma, const InvariantDensity& rho) {
  if (!(gamma > 1.0)) throw std::domain_error("expanded_annihilator: gamma must exceed 1");
  const Measure1D base = rho.measure();
  return combine(base, pushforward_inversion(base, gamma).scaled(-1.0));
}

PeriodizedSeries::PeriodizedSeries(Measure1D nu, QuadratureSpec q) : nu_(std::move(nu)), q_(q) {
  require_no_atoms(nu_, "PeriodizedSeries");
  for (const auto& p : nu_.pieces())
    if (!p.positive_side()) throw std::invalid_argument("PeriodizedSeries: support must lie in [0, inf)");
  const double last = nu_.last_positive_breakpoint();
  terms_ = std::max(kMinTerms, static_cast<int>(std::ceil(last)) + 2);
}

cplx PeriodizedSeries::at(double t) const {
  cplx s = 0.0;
  for (int j = 0; j < terms_; ++j) s += nu_.density(t + j);
  const double x = t + terms_ - 0.5;
  const QuadResult tail = pair(restrict_to(nu_, x, kInf), 0.0, 0.0, q_);
  if (!tail.converged)
    throw std::runtime_error("PeriodizedSeries: tail integral did not converge (error " +
                             std::to_string(tail.error) + ")");
  const double h = 1e-3 * x;
  const cplx slope = (nu_.density(x + h) - nu_.density(x - h)) / (2 * h);
  return s + tail.value + slope / 24.0;
}

std::pair<double, double> periodized_residual(const Measure1D& nu, double gamma, int grid_n) {
  if (!(gamma > 0.0)) throw std::invalid_argument("periodized_residual: gamma must be positive");
  if (grid_n < 1) throw std::invalid_argument("periodized_residual: gridN must be >= 1");
  if (nu.empty()) return {0.0, 0.0};
  const PeriodizedSeries s1(nu), s2(pushforward_inversion(nu, gamma));
  return {sup_abs(kernels::periodized_values(s1, grid_n)),
          sup_abs(kernels::periodized_values(s2, grid_n))};
}

double symmetry_residual(const Measure1D& nu, double gamma, int grid_n) {
  if (grid_n < 1) throw std::invalid_argument("symmetry_residual: gridN must be >= 1");
  const Measure1D image = pushforward_inversion(nu, gamma);
  double worst = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double t = midpoint(i, grid_n);
    for (double s : {t, gamma / t})
      worst = std::max(worst, std::abs(nu.density(s) + image.density(s)));
  }
  return worst;
}

PerturbedResidual perturbed_equation_residual(const Measure1D& omega1, const Measure1D& omega2,
                                              double gamma, int grid_n) {
  if (!(gamma > 1.0 && gamma <= 2.0))
    throw std::invalid_argument("perturbed_equation_residual: gamma must lie in (1,2]");
  if (grid_n < 1) throw std::invalid_argument("perturbed_equation_residual: gridN must be >= 1");
  require_no_atoms(omega1, "perturbed_equation_residual");
  require_no_atoms(omega2, "perturbed_equation_residual");
  for (const auto& p : omega1.pieces())
    if (p.lo() < 0.0 || p.hi() > 1.0)
      throw std::invalid_argument("perturbed_equation_residual: omega1 must live on [0,1]");
  for (const auto& p : omega2.pieces())
    if (p.lo() < 1.0 || p.hi() > gamma)
      throw std::invalid_argument("perturbed_equation_residual: omega2 must live on [1,gamma]");

  const Measure1D mirror2 = pushforward_inversion(omega2, gamma);
  for (int i = 0; i < 256; ++i) {
    const double s = 1.0 + (gamma - 1.0) * midpoint(i, 256);
    if (std::abs(omega2.density(s) + mirror2.density(s)) > kAntisymmetryTol)
      throw std::invalid_argument(
          "perturbed_equation_residual: omega2 is not antisymmetric under t -> gamma/t");
  }

  std::vector<cplx> transfer(static_cast<size_t>(grid_n), 0.0);
  if (!omega1.empty())
    transfer = kernels::periodized_values(PeriodizedSeries(pushforward_inversion(omega1, gamma)),
                                          grid_n);
  double worst = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double t = midpoint(i, grid_n);
    worst = std::max(worst, std::abs(omega1.density(t) - transfer[i] - omega2.density(t + 1.0)));
  }
  return {worst, gamma == 2.0};
}

AnnihilatorReport annihilator_report(const Measure1D& nu, double gamma, int grid_n) {
  const auto [r1, r2] = periodized_residual(nu, gamma, grid_n);
  return {gamma, nu, symmetry_residual(nu, gamma, grid_n), r1, r2, grid_n,
          std::abs(total_mass(nu, QuadratureSpec{}))};
}

json to_json(const AnnihilatorReport& r) {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["gamma"] = r.gamma;
  j["gridN"] = r.grid_n;
  j["symmetryResidual"] = r.symmetry_residual;
  j["periodizedResidualSum1"] = r.periodized_residual_sum1;
  j["periodizedResidualSum2"] = r.periodized_residual_sum2;
  j["totalMass"] = r.total_mass;
  j["measure"] = to_json(r.measure);
  return j;
}

}  // namespace hyperlab
