#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace satfuzz {

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 1,
  kExitConfig = 2,
  kExitInvalidTarget = 3,
  kExitSolverBudget = 4,
};

// Entry point of the satfuzz command line; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(std::string_view bytes);

inline constexpr const char* kToolVersion = "0.3.0";

}  // namespace satfuzz
