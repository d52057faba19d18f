#include "hyperlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyperlab {

struct DensityPiece::Node {
  // Elementary data.
  double lo = 0.0, hi = 0.0;
  ComplexFn fn;
  std::vector<DensityPiece::Carrier> carriers;  // when set, fn is their sum
  std::vector<double> breaks;
  double tv = 0.0;
  json desc;
  // Inversion data.
  std::shared_ptr<const DensityPiece> base;
  double scale = 0.0;
};

namespace {

// Image of an endpoint t of a base interval under t -> s/t; `side` is the sign of the base half-line.
double invert_endpoint(double s, double t, double side) {
  if (t == 0.0) return (s * side > 0.0) ? kInf : -kInf;
  if (std::isinf(t)) return 0.0;
  return s / t;
}

}  // namespace

DensityPiece DensityPiece::elementary(double lo, double hi, ComplexFn density, double tv_bound,
                                      std::vector<double> breaks, json descriptor) {
  if (!(hi > lo)) throw std::invalid_argument("DensityPiece: empty support");
  if (lo < 0.0 && hi > 0.0)
    throw std::invalid_argument("DensityPiece: support must not straddle 0; split it");
  if (!(tv_bound >= 0.0)) throw std::invalid_argument("DensityPiece: tv bound must be >= 0");
  auto n = std::make_shared<Node>();
  n->lo = lo;
  n->hi = hi;
  n->fn = std::move(density);
  std::sort(breaks.begin(), breaks.end());
  for (double b : breaks)
    if (b > lo && b < hi) n->breaks.push_back(b);
  n->tv = tv_bound;
  n->desc = std::move(descriptor);
  return DensityPiece(std::move(n));
}

DensityPiece DensityPiece::modulated(double lo, double hi, std::vector<Carrier> carriers,
                                     double tv_bound, std::vector<double> breaks, json descriptor) {
  if (carriers.empty()) throw std::invalid_argument("DensityPiece::modulated: no carriers");
  auto sum = [carriers](double t) {
    cplx s = 0.0;
    for (const auto& c : carriers) s += std::polar(1.0, c.frequency * t) * c.amplitude(t);
    return s;
  };
  DensityPiece p = elementary(lo, hi, sum, tv_bound, std::move(breaks), std::move(descriptor));
  auto n = std::make_shared<Node>(*p.node_);
  n->carriers = std::move(carriers);
  return DensityPiece(std::move(n));
}

bool DensityPiece::is_inversion() const { return node_->base != nullptr; }
double DensityPiece::inversion_scale() const { return node_->scale; }
const DensityPiece& DensityPiece::inversion_base() const { return *node_->base; }
const json& DensityPiece::descriptor() const { return node_->desc; }

double DensityPiece::lo() const {
  if (!is_inversion()) return node_->lo;
  const auto& b = *node_->base;
  const double side = b.positive_side() ? 1.0 : -1.0;
  const double x = invert_endpoint(node_->scale, b.lo(), side);
  const double y = invert_endpoint(node_->scale, b.hi(), side);
  return std::min(x, y);
}

double DensityPiece::hi() const {
  if (!is_inversion()) return node_->hi;
  const auto& b = *node_->base;
  const double side = b.positive_side() ? 1.0 : -1.0;
  const double x = invert_endpoint(node_->scale, b.lo(), side);
  const double y = invert_endpoint(node_->scale, b.hi(), side);
  return std::max(x, y);
}

double DensityPiece::tv_bound() const {
  return std::abs(coef_) * (is_inversion() ? node_->base->tv_bound() : node_->tv);
}

cplx DensityPiece::density(double t) const {
  if (!(t >= lo() && t < hi())) return 0.0;
  if (!is_inversion()) return coef_ * node_->fn(t);
  if (t == 0.0) return 0.0;  // image of infinity
  const double s = node_->scale;
  return coef_ * node_->base->density(s / t) * (std::abs(s) / (t * t));
}

std::vector<double> DensityPiece::breakpoints() const {
  if (!is_inversion()) return node_->breaks;
  std::vector<double> out;
  for (double b : node_->base->breakpoints()) out.push_back(node_->scale / b);
  std::sort(out.begin(), out.end());
  return out;
}

QuadResult DensityPiece::pair(double omega, double kappa, const QuadratureSpec& q) const {
  QuadResult r;
  if (is_inversion()) {
    const double s = node_->scale;
    r = node_->base->pair(kappa / s, omega * s, q);
  } else {
    auto one = [&](const ComplexFn& f, double w) {
      if (node_->lo >= 0.0) return integrate_phase(f, node_->lo, node_->hi, w, kappa, node_->breaks, q);
      std::vector<double> rb;
      for (double b : node_->breaks) rb.push_back(-b);
      ComplexFn g = [&f](double s) { return f(-s); };
      return integrate_phase(g, -node_->hi, -node_->lo, -w, -kappa, rb, q);
    };
    if (node_->carriers.empty()) {
      r = one(node_->fn, omega);
    } else {
      for (const auto& c : node_->carriers) r += one(c.amplitude, omega + c.frequency);
    }
  }
  r.value *= coef_;
  r.error *= std::abs(coef_);
  return r;
}

QuadResult DensityPiece::abs_integral(const QuadratureSpec& q) const {
  QuadResult r;
  if (is_inversion()) {
    r = node_->base->abs_integral(q);
  } else {
    const auto& f = node_->fn;
    ComplexFn g = [&f](double t) { return cplx(std::abs(f(t)), 0.0); };
    DensityPiece tmp = elementary(node_->lo, node_->hi, g, node_->tv, node_->breaks);
    r = tmp.pair(0.0, 0.0, q);
  }
  r.value *= std::abs(coef_);
  r.error *= std::abs(coef_);
  return r;
}

DensityPiece DensityPiece::scaled(cplx c) const { return DensityPiece(node_, coef_ * c); }

DensityPiece DensityPiece::inverted(double scale) const {
  if (!(scale != 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("DensityPiece::inverted: scale must be finite and nonzero");
  if (is_inversion() && node_->scale == scale) return node_->base->scaled(coef_);
  auto n = std::make_shared<Node>();
  n->base = std::make_shared<const DensityPiece>(*this);
  n->scale = scale;
  return DensityPiece(std::move(n));
}

std::optional<DensityPiece> DensityPiece::restricted(double a, double b) const {
  const double lo_ = std::max(a, lo());
  const double hi_ = std::min(b, hi());
  if (!(hi_ > lo_)) return std::nullopt;
  if (!is_inversion()) {
    auto n = std::make_shared<Node>(*node_);
    n->lo = lo_;
    n->hi = hi_;
    std::vector<double> keep;
    for (double x : node_->breaks)
      if (x > lo_ && x < hi_) keep.push_back(x);
    n->breaks = std::move(keep);
    return DensityPiece(std::move(n), coef_);
  }
  const double s = node_->scale;
  const auto& base = *node_->base;
  const double side = positive_side() ? 1.0 : -1.0;
  const double p = invert_endpoint(s, lo_, side);
  const double r = invert_endpoint(s, hi_, side);
  auto sub = base.restricted(std::min(p, r), std::max(p, r));
  if (!sub) return std::nullopt;
  auto n = std::make_shared<Node>();
  n->base = std::make_shared<const DensityPiece>(*sub);
  n->scale = s;
  return DensityPiece(std::move(n), coef_);
}

Measure1D::Measure1D(std::vector<Atom> atoms, std::vector<DensityPiece> pieces)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  for (const auto& a : atoms_)
    if (!std::isfinite(a.location)) throw std::invalid_argument("Measure1D: atom at infinity");
  std::vector<std::pair<double, double>> spans;
  for (const auto& p : pieces_) spans.emplace_back(p.lo(), p.hi());
  std::sort(spans.begin(), spans.end());
  for (std::size_t i = 1; i < spans.size(); ++i) {
    const double tol = 1e-12 * std::max(1.0, std::abs(spans[i].first));
    if (spans[i].first < spans[i - 1].second - tol)
      throw std::invalid_argument("Measure1D: piece supports overlap");
  }
}

cplx Measure1D::density(double t) const {
  cplx s = 0.0;
  for (const auto& p : pieces_) s += p.density(t);
  return s;
}

double Measure1D::last_positive_breakpoint() const {
  double m = 0.0;
  for (const auto& p : pieces_) {
    if (!p.positive_side()) continue;
    if (std::isfinite(p.hi())) m = std::max(m, p.hi());
    m = std::max(m, p.lo());
    for (double b : p.breakpoints())
      if (std::isfinite(b)) m = std::max(m, b);
  }
  for (const auto& a : atoms_) m = std::max(m, a.location);
  return m;
}

Measure1D Measure1D::scaled(cplx c) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.weight *= c;
  std::vector<DensityPiece> pieces;
  for (const auto& p : pieces_) pieces.push_back(p.scaled(c));
  return Measure1D(std::move(atoms), std::move(pieces));
}

Measure1D combine(const Measure1D& a, const Measure1D& b) {
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  std::vector<DensityPiece> pieces = a.pieces();
  pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
  return Measure1D(std::move(atoms), std::move(pieces));
}

QuadResult pair(const Measure1D& nu, double omega, double kappa, const QuadratureSpec& q) {
  QuadResult r;
  for (const auto& a : nu.atoms()) {
    if (a.location == 0.0 && kappa != 0.0)
      throw std::domain_error("pair: atom at 0 under a 1/t phase");
    const double ph = omega * a.location + (kappa != 0.0 ? kappa / a.location : 0.0);
    r.value += a.weight * cplx(std::cos(ph), std::sin(ph));
  }
  for (const auto& p : nu.pieces()) r += p.pair(omega, kappa, q);
  return r;
}

cplx total_mass(const Measure1D& nu, const QuadratureSpec& q) {
  return require_converged(pair(nu, 0.0, 0.0, q), "total_mass").value;
}

double total_variation(const Measure1D& nu, const QuadratureSpec& q) {
  double s = 0.0;
  for (const auto& a : nu.atoms()) s += std::abs(a.weight);
  for (const auto& p : nu.pieces())
    s += require_converged(p.abs_integral(q), "total_variation").value.real();
  return s;
}

Measure1D restrict_to(const Measure1D& nu, double a, double b) {
  std::vector<Atom> atoms;
  for (const auto& at : nu.atoms())
    if (at.location >= a && at.location < b) atoms.push_back(at);
  std::vector<DensityPiece> pieces;
  for (const auto& p : nu.pieces())
    if (auto r = p.restricted(a, b)) pieces.push_back(*r);
  return Measure1D(std::move(atoms), std::move(pieces));
}

Measure1D pushforward_inversion(const Measure1D& nu, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("pushforward_inversion: gamma must be positive");
  std::vector<Atom> atoms;
  for (const auto& a : nu.atoms()) {
    if (a.location == 0.0) throw std::domain_error("pushforward_inversion: atom at 0");
    atoms.push_back({gamma / a.location, a.weight});
  }
  std::vector<DensityPiece> pieces;
  for (const auto& p : nu.pieces()) pieces.push_back(p.inverted(gamma));
  return Measure1D(std::move(atoms), std::move(pieces));
}

HyperbolaMeasure::HyperbolaMeasure(double m, Measure1D pi1) : m_(m), pi1_(std::move(pi1)) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw std::invalid_argument("HyperbolaMeasure: m must be positive");
  for (const auto& a : pi1_.atoms())
    if (a.location == 0.0) throw std::domain_error("HyperbolaMeasure: pi1 has an atom at 0");
}

const Measure1D& compress_pi1(const HyperbolaMeasure& mu) { return mu.pi1(); }

Measure1D compress_pi2(const HyperbolaMeasure& mu) {
  const double c = mu.c();
  std::vector<Atom> atoms;
  for (const auto& a : mu.pi1().atoms()) {
    if (a.location == 0.0) throw std::domain_error("compress_pi2: atom at 0");
    atoms.push_back({-c / a.location, a.weight});
  }
  std::vector<DensityPiece> pieces;
  for (const auto& p : mu.pi1().pieces()) pieces.push_back(p.inverted(-c));
  return Measure1D(std::move(atoms), std::move(pieces));
}

bool QuadrantTag::contains(double x, double y) const {
  auto pos = [this](double v) { return closed ? v >= 0.0 : v > 0.0; };
  auto neg = [this](double v) { return closed ? v <= 0.0 : v < 0.0; };
  switch (signs) {
    case Signs::pp: return pos(x) && pos(y);
    case Signs::mm: return neg(x) && neg(y);
    case Signs::pm: return pos(x) && neg(y);
    case Signs::mp: return neg(x) && pos(y);
  }
  return false;
}

std::string QuadrantTag::name() const {
  static const char* names[] = {"++", "--", "+-", "-+"};
  return std::string(names[int(signs)]) + (closed ? "" : "open");
}

QuadrantTag QuadrantTag::parse(const std::string& s) {
  QuadrantTag t;
  std::string core = s;
  if (core.size() > 4 && core.substr(core.size() - 4) == "open") {
    t.closed = false;
    core = core.substr(0, core.size() - 4);
  }
  if (core == "++") t.signs = Signs::pp;
  else if (core == "--") t.signs = Signs::mm;
  else if (core == "+-") t.signs = Signs::pm;
  else if (core == "-+") t.signs = Signs::mp;
  else throw std::invalid_argument("QuadrantTag: unknown quadrant '" + s + "'");
  return t;
}

DensityPiece reciprocal1p_piece(double lo, double hi) {
  if (lo <= -1.0 && hi >= -1.0)
    throw std::invalid_argument("reciprocal1p: pole at -1 on the closed support");
  const double tv = std::isinf(hi) ? kInf : std::abs(std::log(std::abs((1 + hi) / (1 + lo))));
  return DensityPiece::elementary(
      lo, hi, [](double t) { return cplx(1.0 / (1.0 + t), 0.0); }, tv, {},
      json{{"family", "reciprocal1p"}, {"lo", lo}, {"hi", hi}});
}

DensityPiece piecewise_constant_piece(std::vector<double> edges, std::vector<cplx> values,
                                      const std::string& family) {
  if (edges.size() < 2 || values.size() + 1 != edges.size())
    throw std::invalid_argument("piecewise_constant_piece: need values.size() + 1 edges");
  if (!std::is_sorted(edges.begin(), edges.end()))
    throw std::invalid_argument("piecewise_constant_piece: edges must increase");
  double tv = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) tv += std::abs(values[i]) * (edges[i + 1] - edges[i]);
  json vals = json::array();
  for (const auto& v : values) vals.push_back({v.real(), v.imag()});
  json desc{{"family", family}, {"edges", edges}, {"values", vals}};
  auto e = std::make_shared<const std::vector<double>>(edges);
  auto v = std::make_shared<const std::vector<cplx>>(std::move(values));
  std::vector<double> breaks(edges.begin() + 1, edges.end() - 1);
  return DensityPiece::elementary(
      edges.front(), edges.back(),
      [e, v](double t) {
        auto it = std::upper_bound(e->begin(), e->end(), t);
        const auto i = std::distance(e->begin(), it) - 1;
        if (i < 0 || i >= static_cast<long>(v->size())) return cplx(0.0, 0.0);
        return (*v)[i];
      },
      tv, std::move(breaks), std::move(desc));
}

DensityPiece uniform_bins_piece(double lo, double hi, std::vector<double> values) {
  const std::size_t n = values.size();
  if (n == 0) throw std::invalid_argument("uniform_bins_piece: no bins");
  std::vector<double> edges(n + 1);
  for (std::size_t i = 0; i <= n; ++i) edges[i] = lo + (hi - lo) * double(i) / double(n);
  edges[n] = hi;
  std::vector<cplx> cv(values.begin(), values.end());
  const double width = (hi - lo) / double(n);
  double tv = 0.0;
  for (double x : values) tv += std::abs(x) * width;
  json desc{{"family", "ulamDensity"}, {"lo", lo}, {"hi", hi}, {"values", values}};
  auto v = std::make_shared<const std::vector<double>>(std::move(values));
  std::vector<double> breaks(edges.begin() + 1, edges.end() - 1);
  return DensityPiece::elementary(
      lo, hi,
      [v, lo, width](double t) {
        auto i = static_cast<long>(std::floor((t - lo) / width));
        if (i < 0) return cplx(0.0, 0.0);
        if (i >= static_cast<long>(v->size())) i = static_cast<long>(v->size()) - 1;
        return cplx((*v)[i], 0.0);
      },
      tv, std::move(breaks), std::move(desc));
}

}  // namespace hyperlab
