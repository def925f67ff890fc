#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conegeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitNumerical = 2;

/// Entry point of the `conegeo` tool. Returns the process exit status:
/// 0 on success, 1 on invalid configuration or I/O problems, 2 when a
/// geometric or numerical check fails (the error name is written to the
/// report file when the command has one).
int run(int argc, const char* const* argv);

/// Same, with explicit arguments (argv[0] excluded) and output streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conegeo::cli
