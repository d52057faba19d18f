#pragma once

#include <string>

#include "hyperlab/measure.hpp"

namespace hyperlab {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal string that round-trips to the same double.
std::string fmt_double(double x);

/// Descriptor of a measure: {"atoms": [[loc, re, im], ...], "pieces": [...]}.
/// Pieces are registered families ("reciprocal1p", "ulamDensity",
/// "tabulated") or {"family": "inversion", "scale", "base"}; each carries
/// "coef": [re, im]. Throws std::invalid_argument on ad-hoc pieces.
json to_json(const Measure1D& nu);
Measure1D measure_from_json(const json& j);

/// Compact JSON text with doubles printed by fmt_double.
std::string dump_stable(const json& j);

}  // namespace hyperlab
