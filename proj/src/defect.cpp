#include "hyperlab/defect.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <Eigen/SVD>

#include "hyperlab/kernels.hpp"

namespace hyperlab {

namespace {

double sinc(double x) { return std::abs(x) < 1e-4 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// Tabulated piece over the smallest run of bins holding every nonzero value.
std::optional<DensityPiece> bin_run(const std::vector<cplx>& v, double length) {
  const int n = static_cast<int>(v.size());
  int first = 0, last = n - 1;
  while (first < n && v[first] == 0.0) ++first;
  while (last >= first && v[last] == 0.0) --last;
  if (first > last) return std::nullopt;
  std::vector<double> edges;
  for (int i = first; i <= last + 1; ++i) edges.push_back(length * i / n);
  return piecewise_constant_piece(edges, std::vector<cplx>(v.begin() + first, v.begin() + last + 1),
                                  "tabulated");
}

Measure1D lift_bins(const CandidateBasis& B, const Eigen::VectorXcd& a) {
  const int M = B.per_side;
  const double c = B.scale;
  std::vector<cplx> tv(static_cast<size_t>(M)), uv(static_cast<size_t>(M));
  for (int i = 0; i < M; ++i) {
    tv[i] = a(i) / c;
    uv[i] = a(M + i);
  }
  std::vector<DensityPiece> pieces;
  if (auto t = bin_run(tv, c)) pieces.push_back(*t);
  if (auto u = bin_run(uv, 1.0)) pieces.push_back(u->inverted(c));
  return Measure1D({}, std::move(pieces));
}

Measure1D lift_hats(const CandidateBasis& B, const Eigen::VectorXcd& a) {
  const int N = B.per_side;
  const double d = B.delta;
  // coefficient of the hat centred at n delta, n in [-N-1, N+1]
  auto coef = [&](int n) -> cplx {
    if (n == 0 || n < -N || n > N) return 0.0;
    return a(n < 0 ? n + N : n + N - 1);
  };
  std::vector<std::pair<double, cplx>> terms;
  double tv = 0.0;
  for (int n = -N; n <= N; ++n)
    if (coef(n) != 0.0) {
      terms.emplace_back(n * d, coef(n));
      tv += 2 * kPi * std::abs(coef(n));
    }
  auto near = [terms, d](double t) {
    cplx s = 0.0;
    for (const auto& [w, c] : terms) s += c * std::polar(1.0, w * t);
    const double k = sinc(0.5 * d * t);
    return d * k * k * s;
  };
  // Far from 0: delta sinc^2(delta t/2) = (2 - e^{i delta t} - e^{-i delta t}) / (delta t^2).
  std::vector<DensityPiece::Carrier> carriers;
  for (int n = -N - 1; n <= N + 1; ++n) {
    const cplx b = 2.0 * coef(n) - coef(n - 1) - coef(n + 1);
    if (b == 0.0) continue;
    carriers.push_back({n * d, [b, d](double t) { return b / (d * t * t); }});
  }
  const double t0 = 2 * kPi / d;
  std::vector<DensityPiece> pieces = {DensityPiece::elementary(-t0, 0.0, near, tv),
                                      DensityPiece::elementary(0.0, t0, near, tv)};
  if (!carriers.empty()) {
    pieces.push_back(DensityPiece::modulated(-kInf, -t0, carriers, tv));
    pieces.push_back(DensityPiece::modulated(t0, kInf, carriers, tv));
  }
  if (terms.empty()) return Measure1D();
  return Measure1D({}, std::move(pieces));
}

std::vector<HyperbolaMeasure> lifted_elements(const CandidateBasis& B) {
  std::vector<HyperbolaMeasure> out;
  out.reserve(static_cast<size_t>(B.size()));
  for (int b = 0; b < B.size(); ++b) out.emplace_back(B.m, B.element(b));
  return out;
}

}  // namespace

Measure1D CandidateBasis::element(int b) const {
  if (b < 0 || b >= size()) throw std::out_of_range("CandidateBasis::element: index out of range");
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(size());
  e(b) = 1.0;
  return lift(e);
}

Measure1D CandidateBasis::lift(const Eigen::VectorXcd& coeffs) const {
  if (coeffs.size() != size()) throw std::invalid_argument("CandidateBasis::lift: size mismatch");
  return kind == Kind::reciprocal_bins ? lift_bins(*this, coeffs) : lift_hats(*this, coeffs);
}

Eigen::VectorXcd CandidateBasis::project(const Measure1D& nu, const QuadratureSpec& q) const {
  if (kind != Kind::reciprocal_bins)
    throw std::logic_error("CandidateBasis::project: only defined for reciprocal bins");
  const int M = per_side;
  Eigen::VectorXcd out(size());
  for (int i = 0; i < M; ++i) {
    const double a = scale * i / M, b = scale * (i + 1) / M;
    out(i) = total_mass(restrict_to(nu, a, b), q) * static_cast<double>(M);
    const double lo = scale * M / (i + 1);
    const double hi = i == 0 ? kInf : scale * M / i;
    out(M + i) = total_mass(restrict_to(nu, lo, hi), q) * static_cast<double>(M);
  }
  return out;
}

double CandidateBasis::centre(int b) const {
  if (kind != Kind::spectral_hats) throw std::logic_error("CandidateBasis::centre: spectral basis only");
  const int n = b < per_side ? b - per_side : b - per_side + 1;
  return n * delta;
}

CandidateBasis reciprocal_bin_basis(int bins_per_side, double m, double scale) {
  if (bins_per_side < 1) throw std::invalid_argument("reciprocal_bin_basis: need at least one bin");
  if (!(m > 0.0) || !(scale > 0.0)) throw std::invalid_argument("reciprocal_bin_basis: m, scale > 0");
  CandidateBasis b;
  b.kind = CandidateBasis::Kind::reciprocal_bins;
  b.per_side = bins_per_side;
  b.m = m;
  b.scale = scale;
  return b;
}

CandidateBasis spectral_hat_basis(int hats_per_side, double delta, double m) {
  if (hats_per_side < 1) throw std::invalid_argument("spectral_hat_basis: need at least one hat");
  if (!(delta > 0.0) || !(m > 0.0)) throw std::invalid_argument("spectral_hat_basis: delta, m > 0");
  CandidateBasis b;
  b.kind = CandidateBasis::Kind::spectral_hats;
  b.per_side = hats_per_side;
  b.delta = delta;
  b.m = m;
  return b;
}

ConstraintMatrix build_constraint_matrix(const CandidateBasis& basis,
                                         const std::vector<CrossPoint>& rows,
                                         const QuadratureSpec& q) {
  const auto elements = lifted_elements(basis);
  const auto grid = kernels::pairing_grid(elements, rows, q);
  ConstraintMatrix mat;
  mat.rows = rows;
  const int nb = basis.size();
  mat.entries.resize(static_cast<Eigen::Index>(rows.size()), nb);
  for (size_t i = 0; i < grid.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i / nb), b = static_cast<Eigen::Index>(i % nb);
    mat.entries(r, b) = grid[i].value;
    mat.max_error = std::max(mat.max_error, grid[i].error);
    if (!grid[i].failure.empty()) mat.failures.push_back(grid[i].failure);
  }
  return mat;
}

ConstraintMatrix build_constraint_matrix(const CandidateBasis& basis, const LatticeCross& cross,
                                         const QuadratureSpec& q) {
  return build_constraint_matrix(basis, cross_points(cross), q);
}

std::vector<double> DefectEstimate::smallest_relative(int k) const {
  std::vector<double> rel;
  for (double s : singular_values) rel.push_back(sigma_max > 0.0 ? s / sigma_max : 0.0);
  while (static_cast<int>(rel.size()) < n_basis) rel.push_back(0.0);
  std::sort(rel.begin(), rel.end());
  if (static_cast<int>(rel.size()) > k) rel.resize(static_cast<size_t>(k));
  return rel;
}

DefectEstimate defect_estimate(const ConstraintMatrix& mat, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("defect_estimate: threshold must lie in (0,1)");
  if (!mat.failures.empty())
    throw QuadratureError("defect_estimate: " + std::to_string(mat.failures.size()) +
                              " matrix entries failed; first: " + mat.failures.front(),
                          mat.max_error);
  const auto nb = mat.entries.cols();
  DefectEstimate est;
  est.threshold = threshold;
  est.n_basis = static_cast<int>(nb);
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Identity(nb, nb);
  int above = 0;
  if (mat.entries.rows() > 0 && nb > 0) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(mat.entries, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) est.singular_values.push_back(sv(i));
    est.sigma_max = sv.size() ? sv(0) : 0.0;
    for (double s : est.singular_values)
      if (est.sigma_max > 0.0 && s > threshold * est.sigma_max) ++above;
    V = svd.matrixV();
  }
  est.numerical_defect = static_cast<int>(nb) - above;
  for (Eigen::Index i = above; i < nb; ++i) est.nullvectors.push_back(V.col(i));
  return est;
}

LatticeCross one_branch_cross(double gamma, int j_max, int k_max) {
  if (!(gamma > 0.0)) throw std::invalid_argument("one_branch_cross: gamma must be positive");
  LatticeCross c;
  c.alpha = 2.0;
  c.beta = 2.0 * gamma;
  c.j_min = -j_max;
  c.j_max = j_max;
  c.k_min = -k_max;
  c.k_max = k_max;
  return c;
}

std::vector<SweepRow> sweep_gamma(const CandidateBasis& basis, const std::vector<double>& gammas,
                                  int j_max, int k_max, int n_sigmas, double threshold,
                                  const QuadratureSpec& q) {
  std::vector<SweepRow> out;
  for (double g : gammas) {
    SweepRow row{g, {}, -1, true, {}};
    try {
      const auto est =
          defect_estimate(build_constraint_matrix(basis, one_branch_cross(g, j_max, k_max), q),
                          threshold);
      row.sigmas = est.smallest_relative(n_sigmas);
      row.defect = est.numerical_defect;
    } catch (const std::exception& e) {
      row.ok = false;
      row.message = e.what();
    }
    out.push_back(std::move(row));
  }
  return out;
}

Calibration calibrate_truncation(const CandidateBasis& basis, double gamma, int j_start,
                                 int max_doublings, double tolerance, const QuadratureSpec& q) {
  if (j_start < 1) throw std::invalid_argument("calibrate_truncation: j_start must be >= 1");
  auto smin = [&](int J) {
    const auto est = defect_estimate(build_constraint_matrix(basis, one_branch_cross(gamma, J, J), q));
    return est.smallest_relative(1).front();
  };
  int J = j_start;
  double s1 = smin(J);
  Calibration cal{};
  for (int d = 0; d <= max_doublings; ++d) {
    const double s2 = smin(2 * J);
    const double change = std::abs(s2 - s1) / std::max(s2, 1e-300);
    cal = {J, s1, s2, change, change <= tolerance};
    if (cal.stable) break;
    J *= 2;
    s1 = s2;
  }
  return cal;
}

double cosine_similarity(const Eigen::VectorXcd& v, const Eigen::VectorXcd& w) {
  const double nv = v.norm(), nw = w.norm();
  if (nv == 0.0 || nw == 0.0) return 0.0;
  return std::abs(v.dot(w)) / (nv * nw);
}

cplx twist(double xi1, double xi2, double m, double t) {
  const double c = m * m / (4 * kPi * kPi);
  return std::polar(1.0, -kPi * (xi1 * t - c * xi2 / t));
}

std::vector<CrossPoint> distorted_cross_points(double xi1, double xi2, double alpha, double beta,
                                               int j_max, int k_max) {
  LatticeCross lower;
  lower.alpha = alpha;
  lower.beta = beta;
  lower.j_min = -j_max;
  lower.j_max = 0;
  lower.k_min = -k_max;
  lower.k_max = 0;
  LatticeCross upper = lower;
  upper.j_min = 0;
  upper.j_max = j_max;
  upper.k_min = 0;
  upper.k_max = k_max;
  upper.offset1 = xi1;
  upper.offset2 = xi2;
  auto pts = cross_points(lower);
  for (const auto& p : cross_points(upper)) pts.push_back(p);
  return pts;
}

double lifted_cross_residual(const CandidateBasis& basis, const Eigen::VectorXcd& v,
                             const std::vector<CrossPoint>& rows, const QuadratureSpec& q) {
  const HyperbolaMeasure mu(basis.m, basis.lift(v));
  double worst = 0.0;
  for (const auto& s : kernels::evaluate_cross(mu, rows, q)) worst = std::max(worst, std::abs(s.ft.value));
  return worst;
}

DistortedCrossResult distorted_cross_residual(const CandidateBasis& basis, double xi1, double xi2,
                                              double alpha, double beta, int j_max, int k_max,
                                              double threshold, const QuadratureSpec& q) {
  if (!(alpha > 0.0 && beta > 0.0)) throw std::invalid_argument("distorted_cross: alpha, beta > 0");
  if (alpha * beta * basis.m * basis.m > 4 * kPi * kPi * (1 + 1e-12))
    throw std::invalid_argument("distorted_cross: requires alpha beta m^2 <= 4 pi^2");
  DistortedCrossResult r;
  r.matrix = build_constraint_matrix(basis, distorted_cross_points(xi1, xi2, alpha, beta, j_max, k_max), q);
  r.estimate = defect_estimate(r.matrix, threshold);
  r.nullvector_residual =
      r.estimate.nullvectors.empty()
          ? 0.0
          : lifted_cross_residual(basis, r.estimate.nullvectors.back(), r.matrix.rows, q);
  return r;
}

}  // namespace hyperlab
