#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weylbound::cli {

enum ExitCode : int { Success = 0, GateFailure = 1, UsageError = 2 };

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylbound::cli
