#include "hyperlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <queue>

namespace hyperlab {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  if (max_subdivisions < 1) throw std::invalid_argument("QuadratureSpec: max_subdivisions < 1");
  if (tail_order < 1) throw std::invalid_argument("QuadratureSpec: tail_order must be >= 1");
}

const QuadResult& require_converged(const QuadResult& r, const std::string& context) {
  if (!r.converged)
    throw QuadratureError(context + ": quadrature did not converge (error estimate " +
                              std::to_string(r.error) + ")",
                          r.error);
  return r;
}

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<std::pair<double, double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<double, double>> rule(n);
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    long double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-19L) break;
    }
    rule[i] = {double(x), double(2 / ((1 - x * x) * dp * dp))};
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const ComplexFn& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  const cplx fc = f(c);
  cplx kron = fc * kWgk[7];
  cplx gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const cplx s = f(c - r * kXgk[j]) + f(c + r * kXgk[j]);
    kron += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {lo, hi, kron * r, std::abs((kron - gauss) * r)};
}

// Chebyshev nodes (first kind) used for the Filon interpolant.
constexpr int kFilonNodes = 9;

struct FilonBasis {
  std::array<double, kFilonNodes> x{};
  // inv[m][k]: coefficient of x^m in the k-th Lagrange polynomial.
  std::array<std::array<double, kFilonNodes>, kFilonNodes> inv{};

  FilonBasis() {
    const int n = kFilonNodes;
    for (int k = 0; k < n; ++k) x[k] = -std::cos(kPi * (k + 0.5) / n);
    std::array<std::array<long double, 2 * kFilonNodes>, kFilonNodes> a{};
    for (int k = 0; k < n; ++k) {
      long double p = 1;
      for (int m = 0; m < n; ++m) {
        a[k][m] = p;  // row k: powers of x_k
        p *= x[k];
      }
      for (int m = 0; m < n; ++m) a[k][n + m] = (k == m) ? 1 : 0;
    }
    for (int col = 0; col < n; ++col) {
      int piv = col;
      for (int r = col + 1; r < n; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      std::swap(a[piv], a[col]);
      const long double d = a[col][col];
      for (auto& v : a[col]) v /= d;
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        const long double f = a[r][col];
        if (f == 0) continue;
        for (int c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    // a[:, n:] = V^{-1} with V[k][m] = x_k^m, so coefficient m of Lagrange k is Vinv[m][k].
    for (int m = 0; m < n; ++m)
      for (int k = 0; k < n; ++k) inv[m][k] = double(a[m][n + k]);
  }
};

const FilonBasis& filon_basis() {
  static const FilonBasis basis;
  return basis;
}

// Moments int_{-1}^{1} x^m e^{i w x} dx, m < kFilonNodes.
std::array<cplx, kFilonNodes> moments(double w) {
  std::array<cplx, kFilonNodes> mom{};
  if (std::abs(w) < 8.0) {
    const auto& gl = gauss_legendre(32);
    for (const auto& [xn, wn] : gl) {
      const cplx e = wn * cplx(std::cos(w * xn), std::sin(w * xn));
      double p = 1.0;
      for (int m = 0; m < kFilonNodes; ++m) {
        mom[m] += p * e;
        p *= xn;
      }
    }
    return mom;
  }
  const cplx iw(0.0, w);
  const cplx ep(std::cos(w), std::sin(w));
  const cplx em = std::conj(ep);
  mom[0] = (ep - em) / iw;
  for (int m = 1; m < kFilonNodes; ++m) {
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    mom[m] = (ep - sgn * em) / iw - double(m) / iw * mom[m - 1];
  }
  return mom;
}

cplx filon_panel(const ComplexFn& amp, double lo, double hi, double omega) {
  const auto& fb = filon_basis();
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  const auto mom = moments(omega * r);
  cplx sum = 0.0;
  for (int k = 0; k < kFilonNodes; ++k) {
    cplx wk = 0.0;
    for (int m = 0; m < kFilonNodes; ++m) wk += fb.inv[m][k] * mom[m];
    sum += wk * amp(c + r * fb.x[k]);
  }
  return r * cplx(std::cos(omega * c), std::sin(omega * c)) * sum;
}

Panel filon_rule(const ComplexFn& amp, double lo, double hi, double omega) {
  const double mid = 0.5 * (lo + hi);
  const cplx whole = filon_panel(amp, lo, hi, omega);
  const cplx halves = filon_panel(amp, lo, mid, omega) + filon_panel(amp, mid, hi, omega);
  return {lo, hi, halves, std::abs(whole - halves)};
}

template <class Rule>
QuadResult adaptive(Rule rule, double a, double b, int initial, const QuadratureSpec& q,
                    long evals_per_rule) {
  QuadResult res;
  if (!(b > a)) return res;
  std::priority_queue<Panel> heap;
  cplx total = 0.0;
  double err = 0.0;
  const double step = (b - a) / initial;
  for (int i = 0; i < initial; ++i) {
    const double lo = a + i * step;
    const double hi = (i + 1 == initial) ? b : a + (i + 1) * step;
    Panel p = rule(lo, hi);
    total += p.value;
    err += p.error;
    heap.push(p);
  }
  long evals = initial * evals_per_rule;
  int sub = initial;
  while (err > std::max(q.abs_tol, q.rel_tol * std::abs(total))) {
    if (sub >= q.max_subdivisions) break;
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    heap.pop();
    Panel left = rule(worst.lo, mid);
    Panel right = rule(mid, worst.hi);
    evals += 2 * evals_per_rule;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++sub;
  }
  // Re-sum to shed accumulated cancellation from the running updates.
  total = 0.0;
  err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.error = err;
  res.evaluations = evals;
  res.converged = std::isfinite(err) && std::isfinite(std::abs(total)) &&
                  err <= std::max(q.abs_tol, q.rel_tol * std::abs(total)) * 1.0001;
  return res;
}

QuadResult integrate_finite(const ComplexFn& f, double a, double b, const QuadratureSpec& q) {
  return adaptive([&](double lo, double hi) { return gk15(f, lo, hi); }, a, b, 1, q, 15);
}

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

// n-th derivative by central differences of step d.
cplx central_derivative(const ComplexFn& f, double t, double d, int n) {
  if (n == 0) return f(t);
  cplx acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
    acc += sgn * binom * f(t + (0.5 * n - k) * d);
    binom = binom * (n - k) / (k + 1);
  }
  return acc / std::pow(d, n);
}

// int_{t0}^inf b(t) e^{i w t} dt, w != 0, b smooth and non-oscillatory at infinity.
QuadResult upper_tail(const ComplexFn& b, double t0, double w, const QuadratureSpec& q) {
  QuadResult res;
  double t = std::max(t0, 50.0 / std::abs(w));
  if (t > t0) res += integrate_linear_phase(b, t0, t, w, q);
  const int order = q.tail_order;
  while (true) {
    if (t >= 1.2 * t0 && std::isfinite(t)) {
      const double d = t / 32.0;
      const cplx iw(0.0, w);
      cplx sum = 0.0;
      cplx last = 0.0;
      cplx pw = iw;
      for (int n = 0; n < order; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        last = sgn * central_derivative(b, t, d, n) / pw;
        sum += last;
        pw *= iw;
      }
      const double est = std::abs(last) * order / (std::abs(w) * t);
      const double tol = std::max(q.abs_tol, q.rel_tol * std::abs(res.value));
      if (est <= 0.1 * tol || t > 1e15) {
        QuadResult tail;
        tail.value = -expi(w * t) * sum;
        tail.error = est;
        tail.converged = t <= 1e15 || est <= tol;
        tail.evaluations = 2 * order;
        res += tail;
        return res;
      }
    }
    res += integrate_linear_phase(b, t, 2 * t, w, q);
    t *= 2;
  }
}

QuadResult finite_segment(const ComplexFn& amp, double p, double qq, double w, double kappa,
                          const QuadratureSpec& q) {
  const double cyc_t = std::abs(w) * (qq - p);
  const double cyc_u = (p > 0.0) ? std::abs(kappa) * (1.0 / p - 1.0 / qq)
                                 : (kappa == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  if (q.method == OscillatoryMethod::adaptive_subdivision || std::max(cyc_t, cyc_u) < 20.0 ||
      cyc_t >= cyc_u) {
    if (kappa == 0.0) return integrate_linear_phase(amp, p, qq, w, q);
    if (q.method == OscillatoryMethod::filon && cyc_t >= cyc_u && cyc_t >= 20.0) {
      ComplexFn b = [&](double t) { return amp(t) * expi(kappa / t); };
      return integrate_linear_phase(b, p, qq, w, q);
    }
    ComplexFn g = [&](double t) { return amp(t) * expi(w * t + kappa / t); };
    return integrate_finite(g, p, qq, q);
  }
  // 1/t phase dominates: move to u = 1/t.
  ComplexFn bu = [&](double u) {
    const double t = 1.0 / u;
    return amp(t) * expi(w * t) * (t * t);
  };
  return integrate_linear_phase(bu, 1.0 / qq, 1.0 / p, kappa, q);
}

}  // namespace

QuadResult integrate(const ComplexFn& f, double a, double b, const QuadratureSpec& q) {
  if (a == b) return {};
  if (a > b) {
    QuadResult r = integrate(f, b, a, q);
    r.value = -r.value;
    return r;
  }
  const bool ia = std::isinf(a), ib = std::isinf(b);
  if (!ia && !ib) return integrate_finite(f, a, b, q);
  if (ia && ib) {
    QuadResult r = integrate(f, -kInf, 0.0, q);
    r += integrate(f, 0.0, kInf, q);
    return r;
  }
  if (ib) {
    // t = a + (1 - v) / v
    ComplexFn g = [&](double v) {
      const double t = a + (1.0 - v) / v;
      return f(t) / (v * v);
    };
    return integrate_finite(g, 0.0, 1.0, q);
  }
  ComplexFn g = [&](double v) {
    const double t = b - (1.0 - v) / v;
    return f(t) / (v * v);
  };
  return integrate_finite(g, 0.0, 1.0, q);
}

QuadResult integrate_linear_phase(const ComplexFn& amp, double a, double b, double omega,
                                  const QuadratureSpec& q) {
  if (!(b > a)) return {};
  const double cycles = std::abs(omega) * (b - a) / (2 * kPi);
  if (q.method == OscillatoryMethod::filon && cycles > 2.0) {
    return adaptive([&](double lo, double hi) { return filon_rule(amp, lo, hi, omega); }, a, b, 2,
                    q, 3 * kFilonNodes);
  }
  ComplexFn g = [&](double t) { return amp(t) * expi(omega * t); };
  const int initial = std::max(1, std::min(q.max_subdivisions / 2, int(cycles) + 1));
  return adaptive([&](double lo, double hi) { return gk15(g, lo, hi); }, a, b, initial, q, 15);
}

QuadResult integrate_phase(const ComplexFn& amp, double a, double b, double omega, double kappa,
                           std::span<const double> breaks, const QuadratureSpec& q) {
  if (!(a >= 0.0) || !(b > a)) {
    if (b == a) return {};
    throw std::invalid_argument("integrate_phase: need 0 <= a < b");
  }
  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  std::sort(pts.begin() + 1, pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (std::isinf(b) && pts.size() == 1) {
    double split = (a > 0.0) ? 2.0 * a : 1.0;
    if (omega != 0.0 && kappa != 0.0) split = std::max(split, std::sqrt(std::abs(kappa / omega)));
    pts.push_back(split);
  }
  if (a == 0.0 && kappa != 0.0 && pts.size() == 1) pts.push_back(0.5 * b);
  pts.push_back(b);

  QuadResult res;
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double p = pts[s], r = pts[s + 1];
    if (p == 0.0 && kappa != 0.0) {
      // u = 1/t maps [0, r] to [1/r, inf) with phase kappa u + omega / u.
      ComplexFn bu = [&](double u) {
        const double t = 1.0 / u;
        return amp(t) * expi(omega * t) * (t * t);
      };
      res += upper_tail(bu, 1.0 / r, kappa, q);
    } else if (std::isinf(r)) {
      if (omega != 0.0) {
        ComplexFn bt = [&](double t) { return amp(t) * expi(kappa / t); };
        res += upper_tail(bt, p, omega, q);
      } else {
        ComplexFn g = [&](double t) { return amp(t) * expi(kappa / t); };
        res += integrate(g, p, r, q);
      }
    } else {
      res += finite_segment(amp, p, r, omega, kappa, q);
    }
  }
  return res;
}

}  // namespace hyperlab
