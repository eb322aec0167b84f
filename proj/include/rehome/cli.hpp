#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rehome {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

/// Runs one command line. `args[0]` is the program name. Output goes to
/// `out`, diagnostics to `err`.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rehome
