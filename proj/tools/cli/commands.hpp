#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace catseye::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kConfig = 2,
  kDomain = 3,
  kSolver = 4,
  kCertification = 5,
};

int exit_code(ErrorKind kind);

/// Each command writes its artifacts into output_dir(config), reports the
/// written paths on `out` and returns an exit code. Errors propagate as
/// catseye::Error with a stage prefix.
int cmd_laminar(const RunConfig& config, std::ostream& out);
int cmd_spectrum(const RunConfig& config, std::ostream& out);
int cmd_solitary(const RunConfig& config, std::ostream& out);
int cmd_periodic(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);
int cmd_certify(const RunConfig& config, std::ostream& out);

/// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catseye::cli
