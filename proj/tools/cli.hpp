#ifndef ETANET_TOOLS_CLI_HPP_
#define ETANET_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace etanet::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInput = 3,
  kRuntime = 4,
};

// Runs one command line (args excludes the program name). Normal output goes
// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etanet::cli

#endif  // ETANET_TOOLS_CLI_HPP_
