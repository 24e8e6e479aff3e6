#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace normtrace::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // a proven bound or identity failed, or routes disagree
  kExitUsage = 2,
  kExitCap = 3,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace normtrace::cli
