#pragma once

#include <exception>
#include <ostream>
#include <string>
#include <vector>

namespace ilaunch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitInvariant = 2;

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit code for an error escaping a command: configuration problems map to
/// kExitConfig, everything else is an internal fault.
int exit_code_for(const std::exception& error);

/// Routes spdlog to stderr at the level named by ILAUNCH_LOG (default: warn).
void configure_logging();

} // namespace ilaunch::cli
