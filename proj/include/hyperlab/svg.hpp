#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace hyperlab {

struct AxesSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int ticks = 5;  ///< tick marks per axis, including both ends
  int width = 640;
  int height = 480;
};

/// Standalone SVG 1.1 document (path, line and text elements only).
/// Throws std::invalid_argument for fewer than two points or a non-finite coordinate.
std::string svg_polyline(const std::vector<std::pair<double, double>>& points, const AxesSpec& axes);

/// Writes svg_polyline to path. Nothing is written when validation fails;
/// I/O failures throw std::runtime_error.
void emit_svg_polyline(const std::vector<std::pair<double, double>>& points, const AxesSpec& axes,
                       const std::filesystem::path& path);

}  // namespace hyperlab
