#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expower::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

// Entry point shared by the `expower` binary and the CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// argv[0] is supplied; `args` are the arguments after it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expower::cli
