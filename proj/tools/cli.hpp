#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace basp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitNoPath = 2;
inline constexpr int kExitSaturation = 3;
inline constexpr int kExitUsage = 64;

// Runs one invocation; args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace basp::cli
