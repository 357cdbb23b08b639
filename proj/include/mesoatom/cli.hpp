#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mesoatom::cli {

// Exit codes shared by every subcommand.
inline constexpr int exit_ok            = 0;
inline constexpr int exit_config_error  = 2;
inline constexpr int exit_no_such_level = 3;
inline constexpr int exit_oracle_error  = 4;

/// Runs one CLI invocation (args exclude the program name). Output goes to
/// `out` unless the config routes it to a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mesoatom::cli
