#pragma once

#include <ostream>

namespace arns::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Parse argv, run one subcommand, print a one-line JSON summary to `out`.
/// Returns 0 on success, 2 on usage or validation errors, 1 when a
/// computation fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace arns::cli
