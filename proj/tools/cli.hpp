#ifndef TORUSFAN_TOOLS_CLI_HPP
#define TORUSFAN_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace torusfan::cli {

/// Runs one command.  args excludes the program name.  Returns 0 on success,
/// 1 when a mathematical check fails, 2 on malformed input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torusfan::cli

#endif
