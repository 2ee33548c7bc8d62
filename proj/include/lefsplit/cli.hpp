#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lefsplit {

/// Environment variable naming the profile file used when --profile is absent.
inline constexpr const char* kProfileEnv = "LEFSPLIT_PROFILE";

/// Runs the command line `args` (without the program name); returns the exit code.
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lefsplit
