#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace delo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitGeometry = 2;
inline constexpr int kSchemaVersion = 1;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --output names a file; errors are written to `err` as a JSON
/// object. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_number(double v);

}  // namespace delo::cli
