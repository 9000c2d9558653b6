#pragma once

// Command-line front end. Kept in the library so tests can drive it with an
// argument list and capture both streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace toporna {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,   // bad flags or arguments
  kExitDomain = 2,  // rejected parameters, parse errors, ceilings
  kExitInternal = 3 // routes disagreed or an unexpected failure
};

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toporna
