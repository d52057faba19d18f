#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hyperlab/measure.hpp"

namespace hyperlab {

/// Command-line or config-file problem, naming the offending key.
class UsageError : public std::invalid_argument {
 public:
  UsageError(std::string key, const std::string& message)
      : std::invalid_argument(message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Raised for --help; carries the rendered usage text.
struct HelpRequested {
  std::string text;
};

using ParamValue = std::variant<double, long, std::string, std::vector<double>, bool>;

/// One experiment: the command name and every parameter it reads, resolved
/// from defaults, the config file and the command line (in that order).
struct ExperimentConfig {
  std::string command;
  std::vector<std::pair<std::string, ParamValue>> params;

  const ParamValue& at(const std::string& key) const;
  double real(const std::string& key) const;
  long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  const std::vector<double>& reals(const std::string& key) const;
  bool flag(const std::string& key) const;

  /// Quadrature tolerances and method when the command takes them.
  QuadratureSpec quadrature() const;
  /// {"command": ..., "<key>": value, ...} in parameter order.
  json to_json() const;
};

const std::vector<std::string>& command_names();

/// Parses `<command> [--key value]... [--config file]`. A config file holds
/// flat key=value lines with the same keys as the flags; flags win.
/// Throws UsageError or HelpRequested.
ExperimentConfig parse_config(const std::vector<std::string>& args);

}  // namespace hyperlab
