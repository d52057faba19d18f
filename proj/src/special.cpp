#include "hyperlab/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hyperlab {

namespace {

SiCi sici_series(double x) {
  // Si(x) = sum (-1)^n x^(2n+1) / ((2n+1)(2n+1)!)
  // Ci(x) = gamma + ln x + sum_{n>=1} (-1)^n x^(2n) / (2n (2n)!)
  const double x2 = x * x;
  double si = 0.0;
  double term = x;  // x^(2n+1)/(2n+1)!
  for (int n = 0; n < 60; ++n) {
    const double add = term / (2 * n + 1);
    si += (n % 2 == 0) ? add : -add;
    if (std::abs(add) < 1e-18 * std::abs(si)) break;
    term *= x2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
  }
  double cs = 0.0;
  term = 1.0;  // x^(2n)/(2n)!
  for (int n = 1; n < 60; ++n) {
    term *= x2 / ((2.0 * n - 1.0) * (2.0 * n));
    const double add = term / (2 * n);
    cs += (n % 2 == 0) ? add : -add;
    if (add < 1e-18) break;
  }
  return {kPi / 2 - si, kEulerGamma + std::log(x) + cs};
}

SiCi sici_continued_fraction(double x) {
  // Modified Lentz for E1(ix); returns h with E1(ix) = e^{-ix} h.
  constexpr double tiny = 1e-300;
  cplx b(1.0, x);
  cplx c(1.0 / tiny, 0.0);
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -double(i - 1) * double(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  // E1(ix) = -Ci(x) + i(Si(x) - pi/2)
  return {-h.imag(), -h.real()};
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error(std::string(what) + ": argument must be positive and finite, got " +
                            std::to_string(x));
}

}  // namespace

SiCi sici(double x) {
  require_positive(x, "sici");
  return x <= 4.0 ? sici_series(x) : sici_continued_fraction(x);
}

double sine_integral_tail(double x) { return sici(x).si_tail; }

double cosine_integral(double x) { return sici(x).ci; }

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < 16.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  const double series =
      r * (1.0 / 12 -
           r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760))))));
  return acc + std::log(x) - 0.5 / x - series;
}

double digamma_diff(double x, double h) {
  require_positive(x, "digamma_diff");
  if (h == 0.0) return 0.0;
  double acc = 0.0;
  while (x < 16.0) {
    acc += h / (x * (x + h));
    x += 1.0;
  }
  const double y = x + h;
  const double ix2 = 1.0 / (x * x), iy2 = 1.0 / (y * y);
  const double d2 = h * (x + y) * ix2 * iy2;
  const double d4 = d2 * (ix2 + iy2);
  const double d6 = d2 * (ix2 * ix2 + ix2 * iy2 + iy2 * iy2);
  const double d8 = d4 * (ix2 * ix2 + iy2 * iy2);
  const double d10 = d2 * (ix2 * ix2 * ix2 * ix2 + ix2 * ix2 * ix2 * iy2 + ix2 * ix2 * iy2 * iy2 +
                           ix2 * iy2 * iy2 * iy2 + iy2 * iy2 * iy2 * iy2);
  return acc + std::log1p(h / x) + h / (2 * x * y) + d2 / 12 - d4 / 120 + d6 / 252 - d8 / 240 +
         d10 / 132;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double acc = 0.0;
  while (x < 16.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // 1/x + 1/(2x^2) + sum B_{2k}/x^{2k+1}
  const double series =
      (1.0 / 6 - r * (1.0 / 30 - r * (1.0 / 42 - r * (1.0 / 30 - r * (5.0 / 66 - r * (691.0 / 2730)))))) /
      (x * x * x);
  return acc + 1.0 / x + 0.5 * r + series;
}

}  // namespace hyperlab
