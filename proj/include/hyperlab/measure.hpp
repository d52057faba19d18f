#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/quadrature.hpp"
#include "json.hpp"

namespace hyperlab {

using nlohmann::json;

/// Point mass of a complex measure on the line.
struct Atom {
  double location;
  cplx weight;
};

/// A density supported on a half-open interval [lo, hi) that never straddles 0.
///
/// Two kinds exist. Elementary pieces hold an evaluable function together
/// with the points where it may jump. Inverted pieces are the pushforward of
/// another piece under t -> s/t, kept by composition: their density is
/// f(s/t) |s| / t^2 and every integral is routed back to the base piece in
/// its own coordinate, so no resampling error accumulates through chains of
/// inversions.
class DensityPiece {
 public:
  /// `descriptor` names a registered family for serialization; leave it
  /// empty for ad-hoc densities (those cannot be serialized).
  static DensityPiece elementary(double lo, double hi, ComplexFn density, double tv_bound,
                                 std::vector<double> breaks = {}, json descriptor = {});

  /// One term e^{i frequency t} amplitude(t) of a multi-carrier density.
  struct Carrier {
    double frequency;
    ComplexFn amplitude;
  };
  /// Elementary piece whose density is a sum of modulated smooth amplitudes.
  /// Pairings integrate each term at its shifted frequency, so oscillatory
  /// tails stay in the regime the asymptotic tail expansion assumes.
  static DensityPiece modulated(double lo, double hi, std::vector<Carrier> carriers,
                                double tv_bound, std::vector<double> breaks = {},
                                json descriptor = {});

  double lo() const;
  double hi() const;
  bool positive_side() const { return lo() >= 0.0; }
  cplx coefficient() const { return coef_; }
  double tv_bound() const;

  /// Density value; zero outside [lo, hi).
  cplx density(double t) const;
  std::vector<double> breakpoints() const;

  /// int exp(i (omega t + kappa / t)) density(t) dt over the support.
  QuadResult pair(double omega, double kappa, const QuadratureSpec& q) const;
  /// int_support |density(t)| dt.
  QuadResult abs_integral(const QuadratureSpec& q) const;

  DensityPiece scaled(cplx c) const;
  /// Pushforward under t -> scale / t.
  DensityPiece inverted(double scale) const;
  /// Restriction to [a, b) intersected with the support; empty if nothing is left.
  std::optional<DensityPiece> restricted(double a, double b) const;

  bool is_inversion() const;
  double inversion_scale() const;
  const DensityPiece& inversion_base() const;
  const json& descriptor() const;

 private:
  struct Node;
  explicit DensityPiece(std::shared_ptr<const Node> n, cplx coef = 1.0)
      : node_(std::move(n)), coef_(coef) {}
  std::shared_ptr<const Node> node_;
  cplx coef_{1.0, 0.0};
};

/// Complex measure on R: finitely many atoms plus densities on disjoint intervals.
class Measure1D {
 public:
  Measure1D() = default;
  /// Throws std::invalid_argument when piece supports overlap.
  Measure1D(std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  bool empty() const { return atoms_.empty() && pieces_.empty(); }

  /// Sum of piece densities at t (atoms excluded).
  cplx density(double t) const;
  /// Largest finite support endpoint or breakpoint on the positive side.
  double last_positive_breakpoint() const;

  Measure1D scaled(cplx c) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
};

/// Sum of two measures whose pieces do not overlap.
Measure1D combine(const Measure1D& a, const Measure1D& b);

/// int exp(i (omega t + kappa / t)) dnu(t).
QuadResult pair(const Measure1D& nu, double omega, double kappa, const QuadratureSpec& q);

cplx total_mass(const Measure1D& nu, const QuadratureSpec& q);
double total_variation(const Measure1D& nu, const QuadratureSpec& q = {});
Measure1D restrict_to(const Measure1D& nu, double a, double b);
/// Image under t -> gamma / t (each half-line onto itself). Throws std::domain_error on an atom at 0.
Measure1D pushforward_inversion(const Measure1D& nu, double gamma);

/// Measure on the hyperbola x1 x2 = -m^2/(4 pi^2), stored through its
/// compression to the x1 axis.
class HyperbolaMeasure {
 public:
  HyperbolaMeasure(double m, Measure1D pi1);
  double m() const { return m_; }
  /// m^2 / (4 pi^2), the constant of the branch map t -> -c/t.
  double c() const { return m_ * m_ / (4 * kPi * kPi); }
  const Measure1D& pi1() const { return pi1_; }

 private:
  double m_;
  Measure1D pi1_;
};

const Measure1D& compress_pi1(const HyperbolaMeasure& mu);
/// Compression to the x2 axis: pushforward of pi1 under t -> -c/t.
Measure1D compress_pi2(const HyperbolaMeasure& mu);

/// Sign pattern of a quadrant of the (xi1, xi2) plane.
struct QuadrantTag {
  enum class Signs { pp, mm, pm, mp };
  Signs signs = Signs::pp;
  bool closed = true;

  bool contains(double xi1, double xi2) const;
  std::string name() const;
  static QuadrantTag parse(const std::string& s);
};

// Registered density families.
DensityPiece reciprocal1p_piece(double lo, double hi);
DensityPiece piecewise_constant_piece(std::vector<double> edges, std::vector<cplx> values,
                                      const std::string& family);
DensityPiece uniform_bins_piece(double lo, double hi, std::vector<double> values);

}  // namespace hyperlab
