#pragma once

#include <ostream>

#include "nlfv/error.hpp"

namespace nlfv {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitBoundViolation = 2,
  kExitConfig = 3,
  kExitAdmissibility = 4,
  kExitRuntime = 5,
};

int exit_code_for(ErrorKind kind);

/// Subcommands: solve, bounds, convergence, stability, entropy-check.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlfv
