#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cptp::cli {

enum ExitCode : int {
  kPass = 0,
  kChecksFailed = 1,
  kParseError = 2,
  kPrecondition = 3,
  kInfeasible = 4,
  kResourceLimit = 5,
};

/// Runs one command line (without the program name). Results go to `out` unless --out
/// is given; diagnostics and timing go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cptp::cli
