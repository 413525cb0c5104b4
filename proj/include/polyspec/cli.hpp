#pragma once
// polyspec command line: eigs, zeta, det, heat, remainder-fit, ngon-limit,
// torus, verify.

#include <string>
#include <vector>

namespace polyspec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace polyspec::cli
