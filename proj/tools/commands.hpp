#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gwimm::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,         // bad flags, malformed or invalid config, unknown check
  kIo = 3,            // output could not be written
  kVerification = 4,  // a check or an output self-validation failed
};

inline constexpr const char* kVersion = "0.1.0";

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwimm::cli
