#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fria::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

/// Runs one `fria` command line (without the program name). Results go to
/// `out` unless `--out <path>` redirects them; diagnostics go to `err`.
/// Returns 0 on success, 1 on usage errors, 2 on computational failures.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fria::cli
