#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equidist::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitExperimentFailed = 2;

/// Runs one command line (without the program name). Reports go to --out
/// when given, otherwise to `out`; diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace equidist::cli
