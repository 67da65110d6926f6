#pragma once

#include <ostream>

namespace gbfam::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

/// Entry point of the gbfam tool, usable in-process. Subcommands: eval,
/// simulate, fit, rv-report.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gbfam::cli
