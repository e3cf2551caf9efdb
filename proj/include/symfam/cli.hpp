#pragma once

#include <iosfwd>

namespace symfam {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kDetected = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNumerical = 3;
}  // namespace exit_code

/// Entry point of the symfam tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symfam
