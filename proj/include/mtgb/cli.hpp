#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtgb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `mtgb` tool. Returns the process exit status.
int run_cli(int argc, char** argv);

/// Same, with explicit streams. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtgb
