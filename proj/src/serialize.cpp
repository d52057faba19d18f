#include "hyperlab/serialize.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace hyperlab {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

json piece_to_json(const DensityPiece& p) {
  json j;
  if (p.is_inversion()) {
    j = {{"family", "inversion"},
         {"scale", p.inversion_scale()},
         {"base", piece_to_json(p.inversion_base())}};
  } else {
    if (p.descriptor().is_null())
      throw std::invalid_argument("to_json: piece has no registered family");
    j = p.descriptor();
  }
  j["coef"] = {p.coefficient().real(), p.coefficient().imag()};
  return j;
}

double num(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  return j.get<double>();
}

DensityPiece piece_from_json(const json& j) {
  const auto family = j.at("family").get<std::string>();
  DensityPiece p = [&]() {
    if (family == "reciprocal1p") return reciprocal1p_piece(num(j.at("lo")), num(j.at("hi")));
    if (family == "ulamDensity")
      return uniform_bins_piece(num(j.at("lo")), num(j.at("hi")),
                                j.at("values").get<std::vector<double>>());
    if (family == "tabulated") {
      std::vector<double> edges;
      for (const auto& e : j.at("edges")) edges.push_back(num(e));
      std::vector<cplx> vals;
      for (const auto& v : j.at("values")) vals.emplace_back(num(v.at(0)), num(v.at(1)));
      return piecewise_constant_piece(std::move(edges), std::move(vals), "tabulated");
    }
    if (family == "inversion")
      return piece_from_json(j.at("base")).inverted(num(j.at("scale")));
    throw std::invalid_argument("measure_from_json: unknown family '" + family + "'");
  }();
  if (j.contains("coef")) p = p.scaled(cplx(num(j["coef"].at(0)), num(j["coef"].at(1))));
  return p;
}

void dump_value(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_value(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? fmt_double(x) : "\"" + fmt_double(x) + "\"";
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

json to_json(const Measure1D& nu) {
  json atoms = json::array();
  for (const auto& a : nu.atoms()) atoms.push_back({a.location, a.weight.real(), a.weight.imag()});
  json pieces = json::array();
  for (const auto& p : nu.pieces()) pieces.push_back(piece_to_json(p));
  return {{"atoms", atoms}, {"pieces", pieces}};
}

Measure1D measure_from_json(const json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back({num(a.at(0)), cplx(num(a.at(1)), num(a.at(2)))});
  std::vector<DensityPiece> pieces;
  for (const auto& p : j.at("pieces")) pieces.push_back(piece_from_json(p));
  return Measure1D(std::move(atoms), std::move(pieces));
}

std::string dump_stable(const json& j) {
  std::string out;
  dump_value(j, out);
  return out;
}

}  // namespace hyperlab
