#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ilaunch::launch {

enum class LaunchMode { TwoTier, SshTree, PerProcess };

std::string_view to_string(LaunchMode mode);
std::optional<LaunchMode> parse_launch_mode(std::string_view text);

/// Latency constants of the launch pipeline, in seconds.
struct TimingModel {
    int fanout = 32;                 // scheduler -> node dispatch tree
    double t_hop_s = 0.010;
    double t_launcher_start_s = 0.050;
    double t_fork_s = 0.001;         // serial within a node
    int ssh_fanout = 16;
    double t_ssh_hop_s = 0.200;
    double dispatch_rate = 200.0;    // per-process dispatches/s in PerProcess mode

    friend bool operator==(const TimingModel&, const TimingModel&) = default;
};

/// Throws ConfigError on non-positive latencies or fan-outs below two.
void validate(const TimingModel& timing);

/// Tree level at which the node with 1-based `node_index` receives its
/// command: the smallest l >= 1 with fanout + fanout^2 + ... + fanout^l >= node_index.
int dispatch_depth(std::int64_t node_index, int fanout);

} // namespace ilaunch::launch
