#pragma once

#include <complex>
#include <limits>

namespace hyperlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

/// Sine and cosine integrals at one argument.
struct SiCi {
  double si_tail;  ///< int_x^inf sin(y)/y dy  (= pi/2 - Si(x))
  double ci;       ///< Ci(x) = -int_x^inf cos(y)/y dy
};

/// Evaluates both integrals for x > 0. Power series for x <= 4, continued
/// fraction for E1(ix) beyond. Throws std::domain_error for x <= 0.
SiCi sici(double x);

/// int_x^inf sin(y)/y dy; tends to pi/2 as x -> 0+. Throws for x <= 0.
double sine_integral_tail(double x);

/// Ci(x), negative on (0, 0.6165...). Throws for x <= 0.
double cosine_integral(double x);

/// psi(x) for x > 0.
double digamma(double x);

/// psi(x + h) - psi(x) for x > 0, h >= 0, without cancellation for small h.
double digamma_diff(double x, double h);

/// psi'(x) for x > 0.
double trigamma(double x);

}  // namespace hyperlab
