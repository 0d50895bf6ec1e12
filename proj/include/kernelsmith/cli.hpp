#pragma once

#include <iosfwd>

namespace kernelsmith {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitCapExceeded = 3,
};

// Runs the tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kernelsmith
