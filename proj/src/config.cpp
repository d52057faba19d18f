#include "hyperlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"

namespace hyperlab {

namespace {

enum class Kind { real, integer, text, reals, flag };

using Check = std::function<std::string(const ParamValue&)>;

struct Param {
  std::string key;
  Kind kind;
  std::string def;
  std::string help;
  Check check;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  /// Checks that involve several parameters; throws UsageError.
  std::function<void(const ExperimentConfig&)> cross_check;
};

const std::string kTwoPiText = "6.283185307179586";

Check positive() {
  return [](const ParamValue& v) -> std::string {
    if (const auto* d = std::get_if<double>(&v)) return *d > 0 ? "" : "must be positive";
    if (const auto* l = std::get_if<long>(&v)) return *l > 0 ? "" : "must be positive";
    for (double x : std::get<std::vector<double>>(v))
      if (!(x > 0)) return "entries must be positive";
    return "";
  };
}

Check at_least(long lo) {
  return [lo](const ParamValue& v) -> std::string {
    return std::get<long>(v) >= lo ? "" : "must be at least " + std::to_string(lo);
  };
}

Check one_of(std::vector<std::string> options) {
  return [options](const ParamValue& v) -> std::string {
    const auto& s = std::get<std::string>(v);
    if (std::find(options.begin(), options.end(), s) != options.end()) return "";
    std::string msg = "must be one of";
    for (const auto& o : options) msg += " '" + o + "'";
    return msg;
  };
}

Check open_unit() {
  return [](const ParamValue& v) -> std::string {
    const double d = std::get<double>(v);
    return d > 0 && d < 1 ? "" : "must lie in (0, 1)";
  };
}

Check quadrant_name() {
  return [](const ParamValue& v) -> std::string {
    const auto& s = std::get<std::string>(v);
    if (s.empty()) return "";
    try {
      QuadrantTag::parse(s);
    } catch (const std::invalid_argument&) {
      return "must be empty or one of ++ -- +- -+, optionally suffixed with 'open'";
    }
    return "";
  };
}

Param real(std::string key, std::string def, std::string help, Check c = {}) {
  return {std::move(key), Kind::real, std::move(def), std::move(help), std::move(c)};
}
Param integer(std::string key, std::string def, std::string help, Check c = {}) {
  return {std::move(key), Kind::integer, std::move(def), std::move(help), std::move(c)};
}
Param text(std::string key, std::string def, std::string help, Check c = {}) {
  return {std::move(key), Kind::text, std::move(def), std::move(help), std::move(c)};
}

void append(std::vector<Param>& to, const std::vector<Param>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

std::vector<Param> quad_params(const std::string& abs_tol, const std::string& rel_tol) {
  return {real("abs-tol", abs_tol, "absolute quadrature tolerance", positive()),
          real("rel-tol", rel_tol, "relative quadrature tolerance", positive()),
          integer("max-subdiv", "4000", "adaptive subdivision budget per integral", at_least(1)),
          text("method", "filon", "oscillatory rule: filon or adaptive",
               one_of({"filon", "adaptive"})),
          integer("tail-order", "4", "integration-by-parts terms on [T, inf)", at_least(1))};
}

std::vector<Param> measure_params() {
  return {text("measure", "critical", "critical, expanded (needs gamma > 1) or file",
               one_of({"critical", "expanded", "file"})),
          text("measure-file", "", "JSON measure descriptor when measure=file"),
          real("gamma", "1.5", "parameter of the expanded annihilator", positive()),
          integer("bins", "4096", "Ulam bins for the expanded annihilator", at_least(2)),
          real("m", kTwoPiText, "hyperbola parameter m", positive())};
}

void check_measure(const ExperimentConfig& c) {
  if (c.text("measure") == "expanded" && !(c.real("gamma") > 1))
    throw UsageError("gamma", "the expanded annihilator needs gamma > 1");
  if (c.text("measure") == "file" && c.text("measure-file").empty())
    throw UsageError("measure-file", "measure=file needs a descriptor path");
}

std::vector<Command> build_registry() {
  std::vector<Command> cmds;
  const Param out = text("out", "-", "output path, - for stdout");

  {
    Command c{"ft-eval", "Fourier transform of a hyperbola measure at one point", {}, {}};
    append(c.params, measure_params());
    c.params.push_back(real("xi1", "2", "first coordinate of xi"));
    c.params.push_back(real("xi2", "0", "second coordinate of xi"));
    append(c.params, quad_params("1e-13", "1e-11"));
    c.params.push_back(out);
    c.cross_check = check_measure;
    cmds.push_back(std::move(c));
  }
  {
    Command c{"ft-cross", "Fourier transform over a lattice-cross window (CSV)", {}, {}};
    append(c.params, measure_params());
    append(c.params, {real("alpha", "2", "spacing on the first axis", positive()),
                      real("beta", "2", "spacing on the second axis", positive()),
                      integer("jmin", "-20", "first-axis index range start"),
                      integer("jmax", "20", "first-axis index range end"),
                      integer("kmin", "-20", "second-axis index range start"),
                      integer("kmax", "20", "second-axis index range end"),
                      real("offset1", "0", "translation of the cross, first coordinate"),
                      real("offset2", "0", "translation of the cross, second coordinate"),
                      text("quadrant", "", "optional quadrant filter (++, --, +-, -+, suffix open)",
                           quadrant_name())});
    append(c.params, quad_params("1e-13", "1e-11"));
    c.params.push_back(out);
    c.cross_check = [](const ExperimentConfig& cfg) {
      check_measure(cfg);
      if (cfg.integer("jmin") > cfg.integer("jmax")) throw UsageError("jmin", "jmin > jmax");
      if (cfg.integer("kmin") > cfg.integer("kmax")) throw UsageError("kmin", "kmin > kmax");
    };
    cmds.push_back(std::move(c));
  }
  {
    Command c{"invariant-density", "Ulam approximation of the invariant density (CSV)", {}, {}};
    c.params = {real("gamma", "1", "map parameter", positive()),
                integer("bins", "4096", "number of uniform bins", at_least(1)),
                real("tol", "1e-12", "L1 stopping tolerance of the power iteration", positive()),
                integer("max-iter", "100000", "power iteration cap", at_least(1)), out};
    cmds.push_back(std::move(c));
  }
  {
    Command c{"annihilator-check", "Residual report for the gamma >= 1 annihilator (JSON)", {}, {}};
    c.params = {real("gamma", "1", "1 for the critical measure, > 1 for the expanded one",
                     positive()),
                integer("grid", "10000", "midpoint grid size for residuals", at_least(1)),
                integer("bins", "4096", "Ulam bins when gamma > 1", at_least(2)), out};
    c.cross_check = [](const ExperimentConfig& cfg) {
      if (cfg.real("gamma") < 1) throw UsageError("gamma", "gamma must be at least 1");
    };
    cmds.push_back(std::move(c));
  }
  {
    Command c{"perturbed-residual",
              "Perturbed periodized equation with omega1 the invariant density (JSON)", {}, {}};
    c.params = {real("gamma", "1.5", "map parameter in (1, 2]", positive()),
                integer("grid", "10000", "midpoint grid size", at_least(1)),
                integer("bins", "4096", "Ulam bins for omega1", at_least(2)),
                real("bump", "0", "height of the antisymmetric omega2 on [1, gamma)"), out};
    c.cross_check = [](const ExperimentConfig& cfg) {
      const double g = cfg.real("gamma");
      if (!(g > 1 && g <= 2)) throw UsageError("gamma", "gamma must lie in (1, 2]");
    };
    cmds.push_back(std::move(c));
  }
  {
    Command c{"coverage", "Fraction of [0,1) reaching [gamma,1] within 2k iterates (CSV)", {}, {}};
    c.params = {real("gamma", "0.5", "map parameter in (0, 1)", open_unit()),
                integer("iterates", "20", "largest k (even iterate 2k)", at_least(0)),
                integer("grid", "100000", "midpoint grid size", at_least(1)), out};
    cmds.push_back(std::move(c));
  }
  {
    Command c{"sici-spiral", "Nielsen spiral (ci(x), si(x)) on a uniform grid (CSV, SVG)", {}, {}};
    c.params = {real("xmin", "0.01", "first grid point", positive()),
                real("xmax", "100", "last grid point", positive()),
                integer("n", "10000", "number of grid points", at_least(2)),
                text("svg", "", "optional SVG path for the (ci, si) polyline"), out};
    c.cross_check = [](const ExperimentConfig& cfg) {
      if (!(cfg.real("xmax") > cfg.real("xmin"))) throw UsageError("xmax", "xmax must exceed xmin");
    };
    cmds.push_back(std::move(c));
  }
  {
    Command c{"hardy-defect", "Coefficient-mass split of a periodized density (JSON)", {}, {}};
    c.params = {text("family", "upper", "upper: 1/(t+i)^2, lower: 1/(t-i)^2, cauchy: 1/(pi(1+t^2))",
                     one_of({"upper", "lower", "cauchy"})),
                integer("nmax", "64", "largest |n| of the coefficients", at_least(1)),
                integer("grid", "4096", "samples of the periodization", at_least(8))};
    append(c.params, quad_params("1e-13", "1e-11"));
    c.params.push_back(out);
    c.cross_check = [](const ExperimentConfig& cfg) {
      if (cfg.integer("grid") < 2 * cfg.integer("nmax") + 1)
        throw UsageError("grid", "grid must be at least 2 nmax + 1");
    };
    cmds.push_back(std::move(c));
  }
  {
    Command c{"hilbert-check", "Hilbert transform checks: closed form, axis signs, routes (JSON)",
              {}, {}};
    c.params = {
        {"xs", Kind::reals, "-3,-2,-1,0,1,2,3", "grid for the line check", {}},
        {"xi1s", Kind::reals, "-2,-1,1,2", "first-axis points for the sign identity", {}},
        {"route-xs", Kind::reals, "-3,-2,-1,-0.5,0.5,1,2,3", "nonzero grid for the route check", {}},
        real("m", kTwoPiText, "hyperbola parameter m", positive())};
    append(c.params, quad_params("1e-10", "1e-8"));
    c.params.push_back(out);
    c.cross_check = [](const ExperimentConfig& cfg) {
      for (double x : cfg.reals("xi1s"))
        if (x == 0) throw UsageError("xi1s", "entries must be nonzero");
      for (double x : cfg.reals("route-xs"))
        if (x == 0) throw UsageError("route-xs", "entries must be nonzero");
    };
    cmds.push_back(std::move(c));
  }
  {
    Command c{"timelike-witness", "Pairings of f_z0 with both exponential families (CSV)", {}, {}};
    c.params = {real("z0-re", "0", "real part of z0"),
                real("z0-im", "1", "imaginary part of z0", positive()),
                real("beta", "1", "second family spacing", positive()),
                integer("jmax", "10", "largest j", at_least(0)),
                integer("kmax", "10", "largest k", at_least(0))};
    append(c.params, quad_params("1e-13", "1e-11"));
    c.params.push_back(out);
    cmds.push_back(std::move(c));
  }
  {
    Command c{"defect-sweep", "Numerical defect of the one-branch cross across gamma (CSV)", {}, {}};
    c.params = {{"gammas", Kind::reals, "0.6,0.8,1,1.2,1.5", "comma-separated gamma grid",
                 positive()},
                integer("bins", "100", "reciprocal bins per side", at_least(1)),
                integer("jmax", "400", "first family truncation |j| <= J", at_least(1)),
                integer("kmax", "400", "second family truncation |k| <= K", at_least(1)),
                integer("sigmas", "3", "smallest relative singular values reported", at_least(1)),
                real("threshold", "0.02", "relative singular value cut", open_unit()),
                {"calibrate", Kind::flag, "false",
                 "double J = K from jmax at gamma = 1 until sigma_min is stable", {}}};
    append(c.params, quad_params("1e-13", "1e-11"));
    c.params.push_back(out);
    cmds.push_back(std::move(c));
  }
  {
    Command c{"distorted-cross", "Defect of the distorted cross in the spectral-hat basis (JSON)",
              {}, {}};
    c.params = {real("xi1", "1", "distortion xi0, first coordinate"),
                real("xi2", "0", "distortion xi0, second coordinate"),
                real("alpha", "1", "first-axis spacing", positive()),
                real("beta", "1", "second-axis spacing", positive()),
                real("m", kTwoPiText, "hyperbola parameter m", positive()),
                integer("hats", "16", "spectral hats per side", at_least(1)),
                real("delta", "0.7853981633974483", "hat half-width", positive()),
                integer("jmax", "6", "first-axis truncation", at_least(0)),
                integer("kmax", "60", "second-axis truncation", at_least(0)),
                real("threshold", "0.02", "relative singular value cut", open_unit())};
    append(c.params, quad_params("1e-13", "1e-11"));
    c.params.push_back(out);
    c.cross_check = [](const ExperimentConfig& cfg) {
      const double m = cfg.real("m");
      if (cfg.real("alpha") * cfg.real("beta") * m * m > 4 * kPi * kPi * (1 + 1e-12))
        throw UsageError("alpha", "alpha beta m^2 must not exceed 4 pi^2");
    };
    cmds.push_back(std::move(c));
  }
  return cmds;
}

const std::vector<Command>& registry() {
  static const std::vector<Command> r = build_registry();
  return r;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r\n") - a + 1);
}

double parse_real(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw UsageError(key, "cannot parse '" + raw + "' as a finite number");
  return v;
}

long parse_integer(const std::string& key, const std::string& raw) {
  const std::string s = trim(raw);
  long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size())
    throw UsageError(key, "cannot parse '" + raw + "' as an integer");
  return v;
}

ParamValue convert(const Param& p, const std::string& raw) {
  switch (p.kind) {
    case Kind::real: return parse_real(p.key, raw);
    case Kind::integer: return parse_integer(p.key, raw);
    case Kind::text: return trim(raw);
    case Kind::flag: {
      const std::string s = trim(raw);
      if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
      if (s == "false" || s == "0" || s == "no" || s == "off") return false;
      throw UsageError(p.key, "cannot parse '" + raw + "' as a boolean");
    }
    case Kind::reals: {
      std::vector<double> out;
      std::stringstream ss(raw);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(parse_real(p.key, item));
      if (out.empty()) throw UsageError(p.key, "empty list");
      return out;
    }
  }
  throw UsageError(p.key, "unsupported kind");
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

const Param* find_param(const Command& c, const std::string& key) {
  for (const auto& p : c.params)
    if (p.key == key) return &p;
  return nullptr;
}

// Reports a bad value for a known key before the command is resolved, so
// `--gamma -1` alone names gamma rather than the missing command.
void prescan(const std::vector<std::string>& args) {
  for (size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i].rfind("--", 0) != 0) continue;
    const std::string key = args[i].substr(2);
    for (const auto& c : registry()) {
      const Param* p = find_param(c, key);
      if (!p) continue;
      if (p->kind == Kind::flag) break;
      const ParamValue v = convert(*p, args[i + 1]);
      if (p->check)
        if (const std::string msg = p->check(v); !msg.empty()) throw UsageError(key, key + " " + msg);
      break;
    }
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& c : registry()) n.push_back(c.name);
    return n;
  }();
  return names;
}

const ParamValue& ExperimentConfig::at(const std::string& key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  throw std::out_of_range("ExperimentConfig: no parameter '" + key + "' for " + command);
}
double ExperimentConfig::real(const std::string& key) const { return std::get<double>(at(key)); }
long ExperimentConfig::integer(const std::string& key) const { return std::get<long>(at(key)); }
const std::string& ExperimentConfig::text(const std::string& key) const {
  return std::get<std::string>(at(key));
}
const std::vector<double>& ExperimentConfig::reals(const std::string& key) const {
  return std::get<std::vector<double>>(at(key));
}
bool ExperimentConfig::flag(const std::string& key) const { return std::get<bool>(at(key)); }

QuadratureSpec ExperimentConfig::quadrature() const {
  QuadratureSpec q;
  auto has = [this](const std::string& k) {
    return std::any_of(params.begin(), params.end(), [&](const auto& p) { return p.first == k; });
  };
  if (!has("abs-tol")) return q;
  q.abs_tol = real("abs-tol");
  q.rel_tol = real("rel-tol");
  q.max_subdivisions = static_cast<int>(integer("max-subdiv"));
  q.method = text("method") == "adaptive" ? OscillatoryMethod::adaptive_subdivision
                                          : OscillatoryMethod::filon;
  q.tail_order = static_cast<int>(integer("tail-order"));
  return q;
}

json ExperimentConfig::to_json() const {
  json j;
  j["command"] = command;
  for (const auto& [k, v] : params) std::visit([&](const auto& x) { j[k] = x; }, v);
  return j;
}

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app("Numerical laboratory for Fourier uniqueness on the hyperbola", "hyperlab");
  app.require_subcommand(1, 1);
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : registry()) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    for (const auto& p : c.params) {
      if (p.kind == Kind::flag) {
        sub->add_flag("--" + p.key, p.help);
      } else {
        sub->add_option("--" + p.key, p.help)
            ->default_str(p.def)
            ->expected(1)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
      }
    }
    sub->add_option("--config", "flat key=value file; flags override its values")->expected(1);
    sub->allow_extras();
    subs[c.name] = sub;
  }

  if (args.empty() || command_names().end() ==
                          std::find(command_names().begin(), command_names().end(), args[0])) {
    if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) throw HelpRequested{app.help()};
    prescan(args);
    throw UsageError("command", args.empty() ? "missing command"
                                             : "unknown command '" + args[0] + "'");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{subs.at(args[0])->help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(args[0], e.what());
  }

  const Command& cmd = *std::find_if(registry().begin(), registry().end(),
                                     [&](const Command& c) { return c.name == args[0]; });
  CLI::App* sub = subs.at(cmd.name);
  for (const auto& extra : sub->remaining()) {
    if (extra.rfind("-", 0) == 0) {
      std::string key = extra.substr(extra.find_first_not_of('-'));
      key = key.substr(0, key.find('='));
      throw UsageError(key, "unknown flag '" + extra + "' for " + cmd.name);
    }
    throw UsageError(cmd.name, "unexpected argument '" + extra + "'");
  }

  std::map<std::string, std::string> from_file;
  if (const CLI::Option* o = sub->get_option("--config"); o->count() > 0) {
    const std::string path = o->results().back();
    std::vector<CLI::ConfigItem> items;
    try {
      items = CLI::ConfigINI().from_file(path);
    } catch (const CLI::Error& e) {
      throw UsageError("config", "cannot read config file '" + path + "': " + e.what());
    }
    for (const auto& it : items) {
      std::string key = it.name;
      for (auto p = it.parents.rbegin(); p != it.parents.rend(); ++p) key = *p + "." + key;
      if (it.name == "++" || it.name == "--") continue;  // section markers
      if (!find_param(cmd, key))
        throw UsageError(key, "unknown key '" + key + "' in config file for " + cmd.name);
      from_file[key] = join(it.inputs);
    }
  }

  ExperimentConfig cfg;
  cfg.command = cmd.name;
  for (const auto& p : cmd.params) {
    const CLI::Option* o = sub->get_option("--" + p.key);
    std::string raw = p.def;
    if (o->count() > 0)
      raw = p.kind == Kind::flag ? "true" : o->results().back();
    else if (auto f = from_file.find(p.key); f != from_file.end())
      raw = f->second;
    ParamValue v = convert(p, raw);
    if (p.check)
      if (const std::string msg = p.check(v); !msg.empty())
        throw UsageError(p.key, p.key + " " + msg);
    cfg.params.emplace_back(p.key, std::move(v));
  }
  if (cmd.cross_check) cmd.cross_check(cfg);
  return cfg;
}

}  // namespace hyperlab
