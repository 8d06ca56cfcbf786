#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace sitebias::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;  // also used for conflicts

inline constexpr const char* kCatalogEnv = "SITEBIAS_CATALOG";

/// Runs `sitebias <args...>` (args exclude the program name). Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sitebias::cli
