#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bpc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitTimeLimit = 3;
inline constexpr int kExitError = 4;

/// Entry point of the bpccsp tool: solve, generate, verify and bench.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bpc
