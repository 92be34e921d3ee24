#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace arte::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitEmpty = 3;

// Entry point of the `arte` binary. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arte::cli
