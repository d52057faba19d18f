#include "hyperlab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hyperlab/fourier.hpp"
#include "hyperlab/kernels.hpp"

namespace hyperlab {

namespace {

constexpr int kMinPeriods = 500;
constexpr double kMassZeroTol = 1e-10;

void require_no_atoms(const Measure1D& f, const char* who) {
  if (!f.atoms().empty()) throw std::invalid_argument(std::string(who) + ": atoms are not supported");
}

// Finite support endpoints and breakpoints of every piece.
std::vector<double> jump_points(const Measure1D& f) {
  std::vector<double> pts;
  for (const auto& p : f.pieces()) {
    for (double e : {p.lo(), p.hi()})
      if (std::isfinite(e)) pts.push_back(e);
    for (double b : p.breakpoints())
      if (std::isfinite(b)) pts.push_back(b);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// A genuine jump keeps its one-sided gap as the probe shrinks; a continuous
// density at a piece boundary does not.
bool jumps_at(const Measure1D& f, double x) {
  const double e = 1e-6 * std::max(1.0, std::abs(x));
  const double wide = std::abs(f.density(x - e) - f.density(x + e));
  const double narrow = std::abs(f.density(x - e / 8) - f.density(x + e / 8));
  return narrow > 0.5 * wide && narrow > 0.0;
}

double extent(const Measure1D& f) {
  double m = 0.0;
  for (double b : jump_points(f)) m = std::max(m, std::abs(b));
  return m;
}

cplx tail_mass(const Measure1D& f, double a, double b, const QuadratureSpec& q) {
  return require_converged(pair(restrict_to(f, a, b), 0.0, 0.0, q), "periodize_q2 tail").value;
}

}  // namespace

Measure1D line_density(ComplexFn fn, double tv_bound, std::vector<double> breaks) {
  return Measure1D({}, {DensityPiece::elementary(-kInf, 0.0, fn, tv_bound, breaks),
                        DensityPiece::elementary(0.0, kInf, fn, tv_bound, breaks)});
}

cplx PeriodicFunction2::mean() const {
  cplx s = 0.0;
  for (const auto& v : samples) s += v;
  return s / static_cast<double>(samples.size());
}

PeriodicFunction2 periodize_q2(const Measure1D& f, int grid_n, const QuadratureSpec& q) {
  if (grid_n < 2) throw std::invalid_argument("periodize_q2: gridN must be >= 2");
  require_no_atoms(f, "periodize_q2");
  const int J = std::max(kMinPeriods, static_cast<int>(std::ceil((extent(f) + 1.0) / 2.0)) + 1);
  auto value = [&](int i) {
    const double x = -1.0 + 2.0 * i / grid_n;
    cplx s = 0.0;
    for (int j = -J; j <= J; ++j) s += f.density(x + 2.0 * j);
    const double r = x + 2.0 * J + 1.0;  // right tail starts at a - 1 with a = x + 2(J+1)
    const double l = x - 2.0 * J - 1.0;
    const double hr = 1e-3 * std::abs(r), hl = 1e-3 * std::abs(l);
    const cplx dr = (f.density(r + hr) - f.density(r - hr)) / (2 * hr);
    const cplx dl = (f.density(l + hl) - f.density(l - hl)) / (2 * hl);
    s += 0.5 * tail_mass(f, r, kInf, q) + dr / 12.0;
    s += 0.5 * tail_mass(f, -kInf, l, q) - dl / 12.0;
    return s;
  };
  PeriodicFunction2 g;
  g.samples = kernels::map_indexed<cplx>(grid_n, value);
  return g;
}

Measure1D inversion_j(const Measure1D& f, double beta, double p) {
  if (!(beta > 0.0)) throw std::invalid_argument("inversion_j: beta must be positive");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("inversion_j: p must lie in (0,1]");
  for (const auto& a : f.atoms())
    if (a.location == 0.0) throw std::domain_error("inversion_j: mass at 0");
  if (p == 1.0) {
    std::vector<Atom> atoms;
    for (const auto& a : f.atoms()) atoms.push_back({-beta / a.location, a.weight});
    std::vector<DensityPiece> pieces;
    for (const auto& piece : f.pieces()) pieces.push_back(piece.inverted(-beta));
    return Measure1D(std::move(atoms), std::move(pieces));
  }
  require_no_atoms(f, "inversion_j with p < 1");
  const cplx theta_neg = std::polar(1.0, -2.0 * kPi / p);
  const double amp = std::pow(beta, 1.0 / p);
  std::vector<DensityPiece> pieces;
  for (const auto& piece : f.pieces()) {
    const bool pos = piece.positive_side();
    auto image = [beta, pos](double t) {
      if (t == 0.0) return pos ? -kInf : kInf;
      if (std::isinf(t)) return 0.0;
      return -beta / t;
    };
    const double a = image(piece.lo()), b = image(piece.hi());
    std::vector<double> breaks;
    for (double x : piece.breakpoints()) breaks.push_back(image(x));
    const cplx theta = piece.positive_side() ? theta_neg : cplx(1.0);
    auto fn = [piece, beta, p, amp, theta](double x) -> cplx {
      if (x == 0.0) return 0.0;
      return amp * std::pow(std::abs(x), -2.0 / p) * theta * piece.density(-beta / x);
    };
    pieces.push_back(DensityPiece::elementary(std::min(a, b), std::max(a, b), fn, kInf, breaks));
  }
  return Measure1D({}, std::move(pieces));
}

FourierCoefficients fourier_coeffs_periodic(const PeriodicFunction2& g, int n_max) {
  if (n_max < 0) throw std::invalid_argument("fourier_coeffs_periodic: nMax must be >= 0");
  const int N = g.size();
  FourierCoefficients out{n_max, std::vector<cplx>(static_cast<size_t>(2 * n_max + 1))};
  for (int n = -n_max; n <= n_max; ++n) {
    cplx s = 0.0;
    for (int i = 0; i < N; ++i) s += g.samples[i] * std::polar(1.0, -kPi * n * g.x(i));
    out.c[static_cast<size_t>(n + n_max)] = s / static_cast<double>(N);
  }
  return out;
}

HardyDefect hardy_defect(const FourierCoefficients& c) {
  HardyDefect d{};
  for (int n = -c.n_max; n <= c.n_max; ++n) {
    const double m = std::abs(c.at(n));
    if (n < 0) d.neg_mass += m;
    if (n <= 0) d.nonpos_mass += m;
    if (n > 0) d.pos_mass += m;
    d.total_mass += m;
  }
  if (!(d.total_mass > 0.0)) throw std::domain_error("hardy_defect: all coefficients vanish");
  d.ratio = d.neg_mass / d.total_mass;
  d.ratio_nonpos = d.nonpos_mass / d.total_mass;
  return d;
}

HardyDefect hardy_defect(const Measure1D& f, int n_max, int grid_n, const QuadratureSpec& q) {
  if (grid_n <= 2 * n_max) throw std::invalid_argument("hardy_defect: gridN must exceed 2 nMax");
  return hardy_defect(fourier_coeffs_periodic(periodize_q2(f, grid_n, q), n_max));
}

HilbertSample hilbert_at(const Measure1D& f, double x, double h, const QuadratureSpec& q) {
  const std::vector<double> jumps = jump_points(f);
  std::vector<double> dist;
  for (double b : jumps) dist.push_back(std::abs(b - x));
  std::sort(dist.begin(), dist.end());
  if (!dist.empty() && dist.front() == 0.0 && jumps_at(f, x)) return {x, 0.0, kInf, false};
  for (double d : dist)
    if (d > 0.0) {
      h = std::min(h, 0.5 * d);
      break;
    }

  auto odd_part = [&](double s) { return (f.density(x - s) - f.density(x + s)) / s; };
  auto excised = [&](double r, QuadResult& acc) {
    cplx inner = 0.0;
    for (const auto& [node, w] : gauss_legendre(24)) {
      const double s = 0.5 * r * (node + 1.0);
      inner += 0.5 * r * w * odd_part(s);
    }
    double from = r;
    std::vector<double> cuts;
    for (double d : dist)
      if (d > r) cuts.push_back(d);
    cplx outer = 0.0;
    for (double c : cuts) {
      const QuadResult seg = integrate(odd_part, from, c, q);
      acc += seg;
      outer += seg.value;
      from = c;
    }
    const QuadResult last = integrate(odd_part, from, kInf, q);
    acc += last;
    outer += last.value;
    return inner + outer;
  };

  QuadResult stats_h{}, stats_h2{};
  stats_h.converged = stats_h2.converged = true;
  const cplx v1 = excised(h, stats_h);
  const cplx v2 = excised(0.5 * h, stats_h2);
  cplx atoms = 0.0;
  for (const auto& a : f.atoms()) {
    if (a.location == x) return {x, 0.0, kInf, false};
    atoms += a.weight / (x - a.location);
  }
  const double err = (std::abs(v1 - v2) + stats_h2.error) / kPi;
  return {x, (v2 + atoms) / kPi, err, stats_h.converged && stats_h2.converged};
}

std::vector<HilbertSample> hilbert_line(const Measure1D& f, const std::vector<double>& xs,
                                        const QuadratureSpec& q) {
  std::vector<double> sorted(xs);
  std::sort(sorted.begin(), sorted.end());
  double spacing = 0.5;
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] > sorted[i - 1]) spacing = std::min(spacing, sorted[i] - sorted[i - 1]);
  const double h = 0.5 * spacing;
  return kernels::map_indexed<HilbertSample>(static_cast<int>(xs.size()),
                                             [&](int i) { return hilbert_at(f, xs[i], h, q); });
}

Measure1D hilbert_line_measure(const Measure1D& f, const QuadratureSpec& q) {
  auto fn = [f, q](double x) { return hilbert_at(f, x, 0.25, q).value; };
  return line_density(fn, kInf, jump_points(f));
}

std::vector<AxisSample> hilbert_axis_check(const HyperbolaMeasure& nu,
                                           const std::vector<double>& xi1s,
                                           const QuadratureSpec& q) {
  const Measure1D& f1 = compress_pi1(nu);
  require_no_atoms(f1, "hilbert_axis_check");
  if (std::abs(total_mass(f1, q)) > kMassZeroTol)
    throw std::invalid_argument("hilbert_axis_check: measure must have total mass 0");
  const HyperbolaMeasure h(nu.m(), hilbert_line_measure(f1, q));
  std::vector<AxisSample> out;
  for (double xi : xi1s) {
    if (xi == 0.0) throw std::invalid_argument("hilbert_axis_check: xi1 must be nonzero");
    const FtValue a = ft_point(h, xi, 0.0, q);
    const FtValue b = ft_point(nu, xi, 0.0, q);
    const cplx expected = cplx(0.0, xi > 0 ? 1.0 : -1.0) * b.value;
    out.push_back({xi, a.value, expected, std::abs(a.value - expected), a.error + b.error});
  }
  return out;
}

HilbertGamma hilbert_hyperbola(const HyperbolaMeasure& nu, const std::vector<double>& xs,
                               const QuadratureSpec& q) {
  const Measure1D& f1 = compress_pi1(nu);
  require_no_atoms(f1, "hilbert_hyperbola");
  if (std::abs(total_mass(f1, q)) > kMassZeroTol)
    throw std::invalid_argument("hilbert_hyperbola: measure must have total mass 0");
  for (double x : xs)
    if (x == 0.0) throw std::invalid_argument("hilbert_hyperbola: grid must avoid 0");
  const Measure1D f2 = compress_pi2(nu);
  const double c = nu.c();

  HilbertGamma out;
  out.xs = xs;
  out.pi1 = hilbert_line(f1, xs, q);
  out.pi2 = hilbert_line(f2, xs, q);
  std::vector<double> mirrored;
  for (double x : xs) mirrored.push_back(-c / x);
  const auto carried = hilbert_line(f1, mirrored, q);
  out.route_gap = 0.0;
  out.route_tol = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double jac = c / (xs[i] * xs[i]);
    out.pi2_from_pi1.push_back(jac * carried[i].value);
    const double gap = std::abs(out.pi2[i].value - out.pi2_from_pi1[i]);
    if (gap >= out.route_gap) {
      out.route_gap = gap;
      out.route_tol = out.pi2[i].error + jac * carried[i].error;
    }
  }
  return out;
}

TimelikeWitness timelike_witness(cplx z0, double beta, int j_max, int k_max, const QuadratureSpec& q) {
  if (!(z0.imag() > 0.0)) throw std::domain_error("timelike_witness: Im z0 must be positive");
  if (!(beta > 0.0)) throw std::invalid_argument("timelike_witness: beta must be positive");
  if (j_max < 0 || k_max < 0) throw std::invalid_argument("timelike_witness: negative index range");
  auto fn = [z0](double t) { return 1.0 / (t - z0) - 1.0 / (t - 2.0 - z0); };
  const Measure1D f = line_density(fn, kInf);
  const int total = j_max + 1 + k_max + 1;
  auto entry = [&](int r) -> Pairing {
    const bool is_j = r <= j_max;
    const int idx = is_j ? r : r - j_max - 1;
    const double omega = is_j ? kPi * idx : 0.0;
    const double kappa = is_j ? 0.0 : kPi * beta * idx;
    const QuadResult res = pair(f, omega, kappa, q);
    if (!res.converged)
      throw QuadratureError(std::string("timelike_witness: pairing ") + (is_j ? "j=" : "k=") +
                                std::to_string(idx) + " did not converge",
                            res.error);
    return {is_j ? 'j' : 'k', idx, res.value, res.error};
  };
  TimelikeWitness w;
  w.pairings = kernels::map_indexed<Pairing>(total, entry);
  w.l1_norm = total_variation(f, q);
  return w;
}

}  // namespace hyperlab
