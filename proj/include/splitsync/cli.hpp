#ifndef SPLITSYNC_CLI_HPP
#define SPLITSYNC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace splitsync {

enum ExitCode : int {
  kExitOk = 0,
  kExitNotDirecting = 1,
  kExitInputError = 2,
  kExitBudget = 3,
  kExitCatalog = 4,
};

// `args` excludes the program name. Results go to `out`, diagnostics to
// `err`; with --json only the result document is written to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splitsync

#endif  // SPLITSYNC_CLI_HPP
