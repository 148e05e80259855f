#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sinc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Runs the command line `args` (without the program name). Results go to
/// `out` (or the --output file), errors to `err` as a JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sinc::cli
