#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpsched::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kToleranceFailure = 2, kRuntimeError = 3 };

// Entry point of the `lpsched` tool; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Environment variable holding the default output directory.
inline constexpr const char* kOutDirEnv = "LPSCHED_OUT_DIR";

}  // namespace lpsched::cli
