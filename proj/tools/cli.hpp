#pragma once

// Command-line front end. Exit codes: 0 ok, 1 input or precondition error,
// 2 internal property violation, 3 inconclusive freeness.

#include <iosfwd>
#include <string>
#include <vector>

namespace orbits::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitInconclusive = 3;

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbits::cli
