#pragma once

#include <ilaunch/workload/scenario.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace ilaunch::workload {

std::vector<std::string> builtin_names();

/// Frozen built-in scenario. Unknown names throw ConfigError listing the valid ones.
Scenario builtin(std::string_view name);

} // namespace ilaunch::workload
