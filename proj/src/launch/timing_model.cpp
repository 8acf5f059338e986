#include <ilaunch/launch/timing_model.hpp>

#include <ilaunch/core/error.hpp>

#include <cmath>
#include <fmt/format.h>

namespace ilaunch::launch {

std::string_view to_string(LaunchMode mode) {
    switch (mode) {
    case LaunchMode::TwoTier: return "two_tier";
    case LaunchMode::SshTree: return "ssh_tree";
    case LaunchMode::PerProcess: return "per_process";
    }
    return "unknown";
}

std::optional<LaunchMode> parse_launch_mode(std::string_view text) {
    for (auto m : {LaunchMode::TwoTier, LaunchMode::SshTree, LaunchMode::PerProcess}) {
        if (text == to_string(m)) {
            return m;
        }
    }
    return std::nullopt;
}

void validate(const TimingModel& t) {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError(fmt::format("launch.timing.{} must be > 0, got {}", key, v));
        }
    };
    positive(t.t_hop_s, "t_hop_s");
    positive(t.t_launcher_start_s, "t_launcher_start_s");
    positive(t.t_fork_s, "t_fork_s");
    positive(t.t_ssh_hop_s, "t_ssh_hop_s");
    positive(t.dispatch_rate, "dispatch_rate");
    if (t.fanout < 2) {
        throw ConfigError(fmt::format("launch.timing.fanout must be >= 2, got {}", t.fanout));
    }
    if (t.ssh_fanout < 2) {
        throw ConfigError(fmt::format("launch.timing.ssh_fanout must be >= 2, got {}", t.ssh_fanout));
    }
}

int dispatch_depth(std::int64_t node_index, int fanout) {
    if (node_index < 1) {
        throw InvariantViolation(fmt::format("dispatch_depth: node index {} < 1", node_index));
    }
    if (fanout < 2) {
        throw InvariantViolation(fmt::format("dispatch_depth: fanout {} < 2", fanout));
    }
    std::int64_t level_size = 1;
    std::int64_t reached = 0;
    int depth = 0;
    while (reached < node_index) {
        level_size *= fanout;
        reached += level_size;
        ++depth;
    }
    return depth;
}

} // namespace ilaunch::launch
