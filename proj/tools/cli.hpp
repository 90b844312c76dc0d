#ifndef IRSROUTE_TOOLS_CLI_HPP
#define IRSROUTE_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace irsroute::cli {

enum ExitCode {
  kOk = 0,
  kError = 1,
  kInfeasible = 2,
  kViolation = 3,
};

// Runs one command line (args[0] is the program name) and returns the exit
// status. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace irsroute::cli

#endif  // IRSROUTE_TOOLS_CLI_HPP
