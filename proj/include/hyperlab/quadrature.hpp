#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperlab/special.hpp"

namespace hyperlab {

enum class OscillatoryMethod { adaptive_subdivision, filon };

/// Tolerances and method selection shared by every integral in the library.
struct QuadratureSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-11;
  int max_subdivisions = 4000;
  OscillatoryMethod method = OscillatoryMethod::filon;
  int tail_order = 4;  ///< terms of the integration-by-parts expansion on [T, inf)

  void validate() const;
};

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    converged = converged && o.converged;
    evaluations += o.evaluations;
    return *this;
  }
};

/// Thrown when an integral misses its tolerance; carries the achieved estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_error_(achieved) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

using ComplexFn = std::function<cplx(double)>;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

/// Adaptive Gauss-Kronrod (7/15) over [a, b]; either end may be infinite.
QuadResult integrate(const ComplexFn& f, double a, double b, const QuadratureSpec& q);

/// int_a^b amp(t) e^{i omega t} dt over a finite interval, by the method in q.
QuadResult integrate_linear_phase(const ComplexFn& amp, double a, double b, double omega,
                                  const QuadratureSpec& q);

/// int_a^b amp(t) exp(i (omega t + kappa / t)) dt for 0 <= a < b <= inf.
///
/// `breaks` lists interior points where amp may be discontinuous. Near t = 0
/// (kappa != 0) the integral is carried to u = 1/t; on [T, inf) the tail is
/// closed with tail_order integration-by-parts terms once omega T is large.
QuadResult integrate_phase(const ComplexFn& amp, double a, double b, double omega, double kappa,
                           std::span<const double> breaks, const QuadratureSpec& q);

/// Throws QuadratureError if r did not converge.
const QuadResult& require_converged(const QuadResult& r, const std::string& context);

}  // namespace hyperlab
