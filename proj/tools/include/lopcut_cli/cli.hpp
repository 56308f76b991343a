#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lopcut::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;
inline constexpr int kExitScale = 3;

/// Runs one command. `args` excludes the program name. Tables and JSON go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lopcut::cli
