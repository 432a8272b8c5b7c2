#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hcm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

// Runs the command line `args` (args[0] is the program name) and returns the
// process exit code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcm::cli
