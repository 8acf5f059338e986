#pragma once

#include <cstdint>
#include <string>

namespace ilaunch::cluster {

using NodeId = std::int32_t;   // 1-based
using JobId = std::int64_t;
using AllocId = std::int64_t;

/// Hardware shape shared by every node of the cluster.
struct NodeSpec {
    int cores = 64;
    int threads_per_core = 4;
    int oversub_max = 2;

    friend bool operator==(const NodeSpec&, const NodeSpec&) = default;
};

/// Processes a node can host: cores x hardware threads x oversubscription.
std::int64_t node_capacity(const NodeSpec& spec);

/// Throws ConfigError when any count is below one.
void validate(const NodeSpec& spec);

/// Per-application launch cost parameters.
struct AppImage {
    std::string name;
    int f_central = 3;             // central-FS requests per start when cached locally
    double t_local_load_s = 0.1;   // uncontended local-disk load time
    int f_central_nocache = 1000;  // central-FS requests per start when not cached

    friend bool operator==(const AppImage&, const AppImage&) = default;
};

void validate(const AppImage& app);

} // namespace ilaunch::cluster
