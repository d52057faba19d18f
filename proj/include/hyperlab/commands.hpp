#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperlab/config.hpp"

namespace hyperlab {

/// Runs one experiment and returns its primary artifact (CSV or JSON text).
/// The resolved config is embedded in the artifact header. Throws on failure.
std::string execute(const ExperimentConfig& cfg);

/// execute() plus artifact writing: the text goes to cfg "out" (stdout for
/// "-"). On failure nothing is written there; a JSON error record goes to
/// `err`. Returns 0 on success, 1 on module errors, 2 on usage errors.
int run_experiment(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// {"schemaVersion": 1, "error": {"command", "key", "message"}}.
std::string error_record(const std::string& command, const std::string& key,
                         const std::string& message);

/// Parses argv-style tokens and runs the command; usage errors and help are
/// handled here so the executable is a thin wrapper.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperlab
