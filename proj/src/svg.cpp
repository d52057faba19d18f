#include "hyperlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>


namespace hyperlab {

namespace {

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

std::string svg_polyline(const std::vector<std::pair<double, double>>& points, const AxesSpec& axes) {
  if (points.size() < 2) throw std::invalid_argument("svg_polyline: need at least two points");
  for (const auto& [x, y] : points)
    if (!std::isfinite(x) || !std::isfinite(y))
      throw std::invalid_argument("svg_polyline: non-finite coordinate");
  if (axes.ticks < 2 || axes.width < 100 || axes.height < 100)
    throw std::invalid_argument("svg_polyline: bad axes spec");

  double x0 = points[0].first, x1 = x0, y0 = points[0].second, y1 = y0;
  for (const auto& [x, y] : points) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
  if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }

  const double left = 70, right = axes.width - 20.0, top = 40, bottom = axes.height - 50.0;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
  auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << axes.width
    << "\" height=\"" << axes.height << "\" viewBox=\"0 0 " << axes.width << ' ' << axes.height
    << "\">\n";
  s << "<text x=\"" << coord(axes.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"16\">" << escape(axes.title) << "</text>\n";
  s << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(bottom) << "\" x2=\"" << coord(right)
    << "\" y2=\"" << coord(bottom) << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(top) << "\" x2=\"" << coord(left)
    << "\" y2=\"" << coord(bottom) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i < axes.ticks; ++i) {
    const double fx = x0 + (x1 - x0) * i / (axes.ticks - 1);
    const double fy = y0 + (y1 - y0) * i / (axes.ticks - 1);
    s << "<line x1=\"" << coord(px(fx)) << "\" y1=\"" << coord(bottom) << "\" x2=\""
      << coord(px(fx)) << "\" y2=\"" << coord(bottom + 6) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << coord(px(fx)) << "\" y=\"" << coord(bottom + 20)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
      << tick_label(fx) << "</text>\n";
    s << "<line x1=\"" << coord(left - 6) << "\" y1=\"" << coord(py(fy)) << "\" x2=\""
      << coord(left) << "\" y2=\"" << coord(py(fy)) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << coord(left - 9) << "\" y=\"" << coord(py(fy) + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << tick_label(fy)
      << "</text>\n";
  }
  s << "<text x=\"" << coord((left + right) / 2) << "\" y=\"" << coord(axes.height - 12.0)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
    << escape(axes.x_label) << "</text>\n";
  s << "<text x=\"16\" y=\"" << coord((top + bottom) / 2) << "\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
    << coord((top + bottom) / 2) << ")\">" << escape(axes.y_label) << "</text>\n";
  s << "<path fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" d=\"";
  for (size_t i = 0; i < points.size(); ++i)
    s << (i == 0 ? "M" : " L") << coord(px(points[i].first)) << ','
      << coord(py(points[i].second));
  s << "\"/>\n</svg>\n";
  return s.str();
}

void emit_svg_polyline(const std::vector<std::pair<double, double>>& points, const AxesSpec& axes,
                       const std::filesystem::path& path) {
  const std::string doc = svg_polyline(points, axes);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << doc;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hyperlab
