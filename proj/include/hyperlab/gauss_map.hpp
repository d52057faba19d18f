#pragma once

#include <optional>
#include <vector>

namespace hyperlab {

/// U_gamma(x) = frac(gamma / x) on [0, 1), with U_gamma(0) = 0.
class GaussMap {
 public:
  explicit GaussMap(double gamma);
  double gamma() const { return gamma_; }

  /// Relative distance of gamma/x to an integer below which x counts as a
  /// branch point; there the result snaps to 0 (the right-continuous value).
  static constexpr double kBranchSnap = 1e-13;

  /// Throws std::domain_error when x is outside [0, 1). `snapped` is set when
  /// x was within kBranchSnap of a branch point.
  double step(double x, bool* snapped = nullptr) const;
  std::vector<double> orbit(double x0, int n) const;
  /// gamma / (y + j) when it lies in the open interval (0, 1).
  std::optional<double> branch_inverse(double y, int j) const;
  /// |U'(x)| = gamma / x^2.
  double derivative_abs(double x) const { return gamma_ / (x * x); }

 private:
  double gamma_;
};

/// Fraction of gridN midpoints x whose orbit meets [lo, hi] at some even time
/// <= 2k, for k = 0..max_even_iterates. Nondecreasing in k.
std::vector<double> coverage_fraction(const GaussMap& map, double lo, double hi,
                                      int max_even_iterates, int grid_n);

}  // namespace hyperlab
