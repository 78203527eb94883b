#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace decat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitParse = 2;

/// Runs one invocation. `args` excludes the program name. The document goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decat::cli
