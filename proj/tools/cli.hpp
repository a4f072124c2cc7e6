#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace esgdoc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPipeline = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the executable and the tests. `args` excludes the
// program name. Payload output goes to `out`, diagnostics to `err`; an input
// of "-" reads `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace esgdoc::cli
