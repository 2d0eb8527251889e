#ifndef RECO_TOOLS_CLI_HPP_
#define RECO_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace reco::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs one subcommand. `args` excludes the program name.
int execute_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace reco::cli

#endif // RECO_TOOLS_CLI_HPP_
