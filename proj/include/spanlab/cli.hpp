#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spanlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolations = 2;

/// Runs one command line (without the program name). Reports and graphs
/// without an output path go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spanlab::cli
