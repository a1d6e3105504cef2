#pragma once

// Command-line front end. Exit codes: 0 success, 1 numeric failure or a
// target that never reached its threshold, 2 usage error.

#include <string>
#include <vector>

namespace vqpt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// Version of the CSV column sets recorded in every manifest.
inline constexpr int kCsvSchemaVersion = 1;

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args);

} // namespace vqpt::cli
