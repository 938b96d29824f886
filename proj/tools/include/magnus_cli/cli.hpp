#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace magnus::cli {

enum ExitCode : int { computed = 0, internal_error = 1, usage_error = 2, input_error = 3, cap_exceeded = 4 };

// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magnus::cli
