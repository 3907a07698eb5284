#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it in-process.

#include <iosfwd>
#include <string>
#include <vector>

namespace paunity::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// args excludes the program name. Reports go to out unless --out is given;
/// diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace paunity::cli
