#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pomapf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `pomapf` binary. `args[0]` is the program name.
/// Subcommands: generate, run, bench, render.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pomapf::cli
