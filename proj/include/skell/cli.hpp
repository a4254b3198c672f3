#pragma once

#include <string>
#include <vector>

namespace skell::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 1;
inline constexpr int kNumericalFailure = 2;
inline constexpr int kIoFailure = 3;

/// Entry point of the `skell` tool. args excludes the program name.
/// Errors are reported as one JSON object on stderr.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace skell::cli
