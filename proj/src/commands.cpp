#include "hyperlab/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "hyperlab/annihilator.hpp"
#include "hyperlab/defect.hpp"
#include "hyperlab/fourier.hpp"
#include "hyperlab/gauss_map.hpp"
#include "hyperlab/hardy.hpp"
#include "hyperlab/serialize.hpp"
#include "hyperlab/svg.hpp"
#include "hyperlab/ulam.hpp"

namespace hyperlab {

namespace {

const char* const kConvention =
    "ft(xi) = int exp(pi i [xi1 t - m^2 xi2 / (4 pi^2 t)]) d(pi1 mu)(t); "
    "pairing with exp(2 pi i j t) is xi = (2j, 0) at m = 2 pi";

class Csv {
 public:
  Csv(const ExperimentConfig& cfg, bool with_convention) {
    s_ << "# hyperlab schemaVersion=" << kSchemaVersion << " command=" << cfg.command << '\n';
    s_ << "# config=" << dump_stable(cfg.to_json()) << '\n';
    if (with_convention) s_ << "# convention: " << kConvention << '\n';
  }
  void meta(const std::string& key, double v) { s_ << "# " << key << '=' << fmt_double(v) << '\n'; }
  void meta(const std::string& key, const std::string& v) { s_ << "# " << key << '=' << v << '\n'; }
  void header(const std::vector<std::string>& cols) {
    for (size_t i = 0; i < cols.size(); ++i) s_ << (i ? "," : "") << cols[i];
    s_ << '\n';
  }
  template <typename... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((s_ << (first ? "" : ",") << cell(cells), first = false), ...);
    s_ << '\n';
  }
  std::string str() const { return s_.str(); }

 private:
  static std::string cell(double v) { return fmt_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(long v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(char v) { return std::string(1, v); }
  std::ostringstream s_;
};

std::string json_artifact(const ExperimentConfig& cfg, json result, bool with_convention) {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = cfg.command;
  j["config"] = cfg.to_json();
  if (with_convention) j["convention"] = kConvention;
  j["result"] = std::move(result);
  return dump_stable(j) + "\n";
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

InvariantDensity ulam_density(double gamma, long bins) {
  return invariant_density(build_ulam(gamma, static_cast<int>(bins)));
}

Measure1D measure_for(const ExperimentConfig& cfg) {
  const std::string& kind = cfg.text("measure");
  if (kind == "critical") return critical_annihilator();
  if (kind == "expanded") {
    const double g = cfg.real("gamma");
    return expanded_annihilator(g, ulam_density(g, cfg.integer("bins")));
  }
  const std::string& path = cfg.text("measure-file");
  std::ifstream f(path);
  if (!f) throw UsageError("measure-file", "cannot open '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw UsageError("measure-file", std::string("invalid JSON: ") + e.what());
  }
  return measure_from_json(j.contains("measure") ? j["measure"] : j);
}

std::string ft_eval(const ExperimentConfig& cfg) {
  const HyperbolaMeasure mu(cfg.real("m"), measure_for(cfg));
  const FtValue v = ft_point(mu, cfg.real("xi1"), cfg.real("xi2"), cfg.quadrature());
  json r = {{"xi1", cfg.real("xi1")},
            {"xi2", cfg.real("xi2")},
            {"re", v.value.real()},
            {"im", v.value.imag()},
            {"absErrEstimate", v.error}};
  return json_artifact(cfg, r, true);
}

std::string ft_cross(const ExperimentConfig& cfg) {
  const HyperbolaMeasure mu(cfg.real("m"), measure_for(cfg));
  LatticeCross cross;
  cross.alpha = cfg.real("alpha");
  cross.beta = cfg.real("beta");
  cross.j_min = static_cast<int>(cfg.integer("jmin"));
  cross.j_max = static_cast<int>(cfg.integer("jmax"));
  cross.k_min = static_cast<int>(cfg.integer("kmin"));
  cross.k_max = static_cast<int>(cfg.integer("kmax"));
  cross.offset1 = cfg.real("offset1");
  cross.offset2 = cfg.real("offset2");
  if (!cfg.text("quadrant").empty()) cross.quadrant = QuadrantTag::parse(cfg.text("quadrant"));
  const auto samples = ft_on_cross(mu, cross, cfg.quadrature());
  Csv csv(cfg, true);
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(s.ft.value));
  csv.meta("maxAbs", worst);
  csv.header({"axis", "index", "xi1", "xi2", "re", "im", "absErrEstimate"});
  for (const auto& s : samples)
    csv.row(s.point.axis, s.point.index, s.point.xi1, s.point.xi2, s.ft.value.real(),
            s.ft.value.imag(), s.ft.error);
  return csv.str();
}

std::string invariant_density_cmd(const ExperimentConfig& cfg) {
  const UlamOperator op = build_ulam(cfg.real("gamma"), static_cast<int>(cfg.integer("bins")));
  const InvariantDensity rho =
      invariant_density(op, cfg.real("tol"), static_cast<int>(cfg.integer("max-iter")));
  Csv csv(cfg, false);
  csv.meta("residual", rho.residual);
  csv.meta("iterations", std::to_string(rho.iterations));
  csv.header({"binLeft", "binRight", "value"});
  for (int i = 0; i < rho.n_bins(); ++i) csv.row(rho.left(i), rho.right(i), rho.values[i]);
  return csv.str();
}

std::string annihilator_check(const ExperimentConfig& cfg) {
  const double g = cfg.real("gamma");
  const Measure1D nu =
      g == 1.0 ? critical_annihilator() : expanded_annihilator(g, ulam_density(g, cfg.integer("bins")));
  const AnnihilatorReport rep = annihilator_report(nu, g, static_cast<int>(cfg.integer("grid")));
  json r = to_json(rep);
  r["variationBelowGammaRoot"] = total_variation(restrict_to(nu, 0.0, std::sqrt(g)));
  r["variationAboveGammaRoot"] = total_variation(restrict_to(nu, std::sqrt(g), kInf));
  return json_artifact(cfg, r, false);
}

std::string perturbed_residual_cmd(const ExperimentConfig& cfg) {
  const double g = cfg.real("gamma");
  const Measure1D omega1 = ulam_density(g, cfg.integer("bins")).measure();
  Measure1D omega2;
  if (const double b = cfg.real("bump"); b != 0.0) {
    const DensityPiece up = piecewise_constant_piece({1.0, std::sqrt(g)}, {cplx(b)}, "tabulated");
    omega2 = Measure1D({}, {up, up.inverted(g).scaled(-1.0)});
  }
  const PerturbedResidual pr =
      perturbed_equation_residual(omega1, omega2, g, static_cast<int>(cfg.integer("grid")));
  json r = {{"residual", pr.residual}, {"gammaEndpoint", pr.gamma_endpoint}};
  return json_artifact(cfg, r, false);
}

std::string coverage_cmd(const ExperimentConfig& cfg) {
  const double g = cfg.real("gamma");
  const auto frac = coverage_fraction(GaussMap(g), g, 1.0, static_cast<int>(cfg.integer("iterates")),
                                      static_cast<int>(cfg.integer("grid")));
  Csv csv(cfg, false);
  csv.header({"k", "fraction"});
  for (size_t k = 0; k < frac.size(); ++k) csv.row(static_cast<int>(k), frac[k]);
  return csv.str();
}

std::string sici_spiral(const ExperimentConfig& cfg) {
  const double a = cfg.real("xmin"), b = cfg.real("xmax");
  const long n = cfg.integer("n");
  std::vector<double> xs(static_cast<size_t>(n));
  for (long i = 0; i < n; ++i) xs[i] = i + 1 == n ? b : a + (b - a) * static_cast<double>(i) / (n - 1);
  const Spiral sp = nielsen_spiral(xs);
  if (const std::string& path = cfg.text("svg"); !path.empty()) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : sp.points) pts.emplace_back(p.ci, p.si);
    emit_svg_polyline(pts, {"Nielsen spiral (ci(x), si(x))", "ci(x)", "si(x)"}, path);
  }
  Csv csv(cfg, false);
  csv.meta("minModulus", sp.min_modulus);
  csv.meta("si", "int_x^inf sin(y)/y dy; ci(x) = -int_x^inf cos(y)/y dy");
  csv.header({"x", "ci", "si", "modulus"});
  for (const auto& p : sp.points) csv.row(p.x, p.ci, p.si, p.modulus());
  return csv.str();
}

Measure1D hardy_family(const std::string& name) {
  const cplx I(0.0, 1.0);
  if (name == "upper") return line_density([I](double t) { return 1.0 / ((t + I) * (t + I)); }, kPi);
  if (name == "lower") return line_density([I](double t) { return 1.0 / ((t - I) * (t - I)); }, kPi);
  return line_density([](double t) { return cplx(1.0 / (kPi * (1.0 + t * t))); }, 1.0);
}

std::string hardy_defect_cmd(const ExperimentConfig& cfg) {
  const HardyDefect d = hardy_defect(hardy_family(cfg.text("family")),
                                     static_cast<int>(cfg.integer("nmax")),
                                     static_cast<int>(cfg.integer("grid")), cfg.quadrature());
  json r = {{"negMass", d.neg_mass},   {"nonposMass", d.nonpos_mass}, {"posMass", d.pos_mass},
            {"totalMass", d.total_mass}, {"ratio", d.ratio},          {"ratioNonpos", d.ratio_nonpos}};
  return json_artifact(cfg, r, false);
}

std::string hilbert_check(const ExperimentConfig& cfg) {
  const QuadratureSpec q = cfg.quadrature();
  const Measure1D cauchy = hardy_family("cauchy");
  json line = json::array();
  double line_gap = 0.0;
  for (const auto& s : hilbert_line(cauchy, cfg.reals("xs"), q)) {
    const double exact = s.x / (kPi * (1.0 + s.x * s.x));
    const double gap = std::abs(s.value - exact);
    line_gap = std::max(line_gap, gap);
    line.push_back({{"x", s.x}, {"value", complex_json(s.value)}, {"exact", exact},
                    {"gap", gap}, {"errEstimate", s.error}, {"converged", s.converged}});
  }

  // Mass-zero test measure: derivative of the Cauchy density.
  const HyperbolaMeasure nu(
      cfg.real("m"),
      line_density([](double t) { return cplx(-2.0 * t / (kPi * std::pow(1.0 + t * t, 2))); }, 1.0));
  json axis = json::array();
  double axis_gap = 0.0;
  for (const auto& s : hilbert_axis_check(nu, cfg.reals("xi1s"), q)) {
    axis_gap = std::max(axis_gap, s.gap);
    axis.push_back({{"xi1", s.xi1}, {"transformed", complex_json(s.transformed)},
                    {"expected", complex_json(s.expected)}, {"gap", s.gap},
                    {"errEstimate", s.error}});
  }
  const HilbertGamma hg = hilbert_hyperbola(nu, cfg.reals("route-xs"), q);

  json r = {{"cauchyLine", {{"samples", line}, {"maxGap", line_gap}}},
            {"axisSigns", {{"samples", axis}, {"maxGap", axis_gap}}},
            {"routes", {{"gap", hg.route_gap}, {"tolerance", hg.route_tol}}}};
  return json_artifact(cfg, r, true);
}

std::string timelike_witness_cmd(const ExperimentConfig& cfg) {
  const TimelikeWitness w =
      timelike_witness(cplx(cfg.real("z0-re"), cfg.real("z0-im")), cfg.real("beta"),
                       static_cast<int>(cfg.integer("jmax")), static_cast<int>(cfg.integer("kmax")),
                       cfg.quadrature());
  Csv csv(cfg, false);
  csv.meta("l1Norm", w.l1_norm);
  csv.header({"kind", "index", "re", "im", "errEstimate"});
  for (const auto& p : w.pairings) csv.row(p.kind, p.index, p.value.real(), p.value.imag(), p.error);
  return csv.str();
}

std::string defect_sweep(const ExperimentConfig& cfg) {
  const QuadratureSpec q = cfg.quadrature();
  const CandidateBasis basis = reciprocal_bin_basis(static_cast<int>(cfg.integer("bins")));
  int j = static_cast<int>(cfg.integer("jmax")), k = static_cast<int>(cfg.integer("kmax"));
  Csv csv(cfg, true);
  if (cfg.flag("calibrate")) {
    const Calibration cal = calibrate_truncation(basis, 1.0, j, 3, 0.05, q);
    j = k = cal.j_max;
    csv.meta("calibratedJ", std::to_string(cal.j_max));
    csv.meta("calibrationChange", cal.relative_change);
    csv.meta("calibrationStable", cal.stable ? "true" : "false");
  }
  const int n_sig = static_cast<int>(cfg.integer("sigmas"));
  const auto rows = sweep_gamma(basis, cfg.reals("gammas"), j, k, n_sig, cfg.real("threshold"), q);
  for (const auto& r : rows)
    if (!r.ok) csv.meta("failure", "gamma " + fmt_double(r.gamma) + ": " + r.message);
  std::vector<std::string> cols{"gamma"};
  for (int i = 1; i <= n_sig; ++i) cols.push_back("sigma" + std::to_string(i));
  cols.push_back("defect");
  csv.header(cols);
  for (const auto& r : rows) {
    std::string line = fmt_double(r.gamma);
    for (int i = 0; i < n_sig; ++i)
      line += "," + (r.ok && i < static_cast<int>(r.sigmas.size()) ? fmt_double(r.sigmas[i]) : "");
    line += "," + (r.ok ? std::to_string(r.defect) : std::string());
    csv.row(line);
  }
  return csv.str();
}

std::string distorted_cross(const ExperimentConfig& cfg) {
  const CandidateBasis basis = spectral_hat_basis(static_cast<int>(cfg.integer("hats")),
                                                  cfg.real("delta"), cfg.real("m"));
  const DistortedCrossResult res = distorted_cross_residual(
      basis, cfg.real("xi1"), cfg.real("xi2"), cfg.real("alpha"), cfg.real("beta"),
      static_cast<int>(cfg.integer("jmax")), static_cast<int>(cfg.integer("kmax")),
      cfg.real("threshold"), cfg.quadrature());
  const DefectEstimate& e = res.estimate;
  json r = {{"xi0", {cfg.real("xi1"), cfg.real("xi2")}},
            {"numericalDefect", e.numerical_defect},
            {"nBasis", e.n_basis},
            {"rows", res.matrix.rows.size()},
            {"sigmaMax", e.sigma_max},
            {"threshold", e.threshold},
            {"smallestRelative", e.smallest_relative(std::min(5, e.n_basis))},
            {"matrixErrEstimate", res.matrix.max_error},
            {"nullvectorResidual", res.nullvector_residual}};
  return json_artifact(cfg, r, true);
}

using Handler = std::function<std::string(const ExperimentConfig&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"ft-eval", ft_eval},
      {"ft-cross", ft_cross},
      {"invariant-density", invariant_density_cmd},
      {"annihilator-check", annihilator_check},
      {"perturbed-residual", perturbed_residual_cmd},
      {"coverage", coverage_cmd},
      {"sici-spiral", sici_spiral},
      {"hardy-defect", hardy_defect_cmd},
      {"hilbert-check", hilbert_check},
      {"timelike-witness", timelike_witness_cmd},
      {"defect-sweep", defect_sweep},
      {"distorted-cross", distorted_cross}};
  return h;
}

std::string error_key(const std::exception& e) {
  if (const auto* u = dynamic_cast<const UsageError*>(&e)) return u->key();
  if (dynamic_cast<const QuadratureError*>(&e)) return "quadrature";
  if (dynamic_cast<const std::length_error*>(&e)) return "memory";
  if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e))
    return "precondition";
  return "runtime";
}

}  // namespace

std::string execute(const ExperimentConfig& cfg) {
  const auto it = handlers().find(cfg.command);
  if (it == handlers().end()) throw UsageError("command", "unknown command '" + cfg.command + "'");
  return it->second(cfg);
}

std::string error_record(const std::string& command, const std::string& key,
                         const std::string& message) {
  json j;
  j["schemaVersion"] = kSchemaVersion;
  j["error"] = {{"command", command}, {"key", key}, {"message", message}};
  return dump_stable(j) + "\n";
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const std::string text = execute(cfg);
    const std::string& path = cfg.text("out");
    if (path == "-") {
      out << text;
    } else {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
      f << text;
      if (!f) throw std::runtime_error("write failed: " + path);
    }
    return 0;
  } catch (const UsageError& e) {
    err << error_record(cfg.command, e.key(), e.what());
    return 2;
  } catch (const std::exception& e) {
    err << error_record(cfg.command, error_key(e), e.what());
    return 1;
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  try {
    cfg = parse_config(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const UsageError& e) {
    err << error_record(args.empty() ? "" : args[0], e.key(), e.what());
    return 2;
  }
  return run_experiment(cfg, out, err);
}

}  // namespace hyperlab
