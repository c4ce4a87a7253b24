#pragma once

#include <ostream>
#include <span>
#include <string>

namespace bslimits::cli {

/// Exit codes. Verdicts are printed, never signalled through the exit code.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kPrecision = 3,
  kInternal = 4,
};

/// Runs the bs-limits front end; args[0] is the program name.
int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err);

}  // namespace bslimits::cli
