// The obtool command set, callable in-process.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace obtool {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obtool
