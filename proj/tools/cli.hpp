#ifndef LSAPE_TOOLS_CLI_HPP_
#define LSAPE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace lsape::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitTooLarge = 3;

// Runs the command line `args` (args[0] is the program name). Results go to
// `out` as key=value lines, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lsape::cli

#endif  // LSAPE_TOOLS_CLI_HPP_
