#ifndef REWORK_TOOLS_CLI_HPP
#define REWORK_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rework::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kConfig = 3,
  kIo = 4,
};

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rework::cli

#endif  // REWORK_TOOLS_CLI_HPP
