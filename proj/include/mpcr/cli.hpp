#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mpcr::cli {

inline constexpr const char* kVersion = "mpcr 1.0.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitNumerical = 3,
  kExitIo = 4,
};

// Parses argv (argv[0] is the program name), runs one subcommand, and
// writes its tables plus run_manifest.json under the output directory.
// Diagnostics go to `err` as a single line; never throws.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mpcr::cli
