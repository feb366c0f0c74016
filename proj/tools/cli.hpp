#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace petri::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kSemantic = 3,
  kCapExceeded = 4,
};

/// Runs one command. `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace petri::cli
