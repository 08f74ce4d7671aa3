#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fshor::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    /// The algorithm ran and reported a classified failure (trivial -1 base,
    /// order extraction exhausted, coherence check failed).
    kClassifiedFailure = 2,
};

enum class OutputFormat { text, json, csv };

/// Environment variable consulted for the default --format.
inline constexpr const char* kFormatEnv = "FSHOR_FORMAT";

/// Runs the command line `args` (without argv[0]) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fshor::cli
