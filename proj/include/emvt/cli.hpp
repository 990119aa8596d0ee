#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace emvt::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kResourceError = 2,  // memory budget, overflow, oracle cap
  kInvariantViolation = 3,
};

/// Subcommands: enum, count, profile-digits, carry-check, waring, fit, selftest.
/// Results go to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace emvt::cli
