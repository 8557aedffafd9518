#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qkd::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kValidationFailure = 2,
};

/// Environment variable that caps simulation worker threads.
inline constexpr const char* kThreadsEnv = "QKD_DISSIPATION_THREADS";

/// Runs one CLI invocation. `args` excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qkd::cli
