#pragma once

// Command line front end. Exit codes: 0 success, 1 a check failed (the
// report is still written), 2 bad input, configuration or precision,
// 3 internal error.

#include <iosfwd>
#include <string>
#include <vector>

namespace magnetic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace magnetic::cli
