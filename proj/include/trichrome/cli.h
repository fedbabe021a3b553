#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trichrome::cli {

inline constexpr int kExitSat = 0;
inline constexpr int kExitUnsat = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;

/// Runs one command line (without the program name). Normal output goes to
/// `out`, diagnostics to `err`; the return value is the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace trichrome::cli
