#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qalab::app {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitSolver = 3 };

/// Entry point of the `qalab` command: parses argv, runs one subcommand and
/// writes its artifacts. Diagnostics go to `err`, listings to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qalab::app
