#pragma once

#include <ilaunch/cluster/node.hpp>
#include <ilaunch/core/sim_time.hpp>
#include <ilaunch/launch/timing_model.hpp>

#include <string>
#include <vector>

namespace ilaunch::launch {

/// Timeline of one launched process.
struct ProcessTiming {
    int node_index = 0;           // 1-based position in the job's node list
    cluster::NodeId node = 0;
    int proc = 0;                 // 1-based within its node
    core::SimTime received;       // command reached the node (or the process, PerProcess mode)
    core::SimTime launcher_ready; // equals `received` in PerProcess mode
    core::SimTime forked;
    core::SimTime enqueued;       // local load done, FS requests issued
    core::SimTime ready;
};

struct LaunchRecord {
    cluster::JobId job = 0;
    LaunchMode mode = LaunchMode::TwoTier;
    std::string app;
    core::SimTime dispatch_begin;
    int node_count = 0;
    std::vector<ProcessTiming> procs;

    core::SimTime last_ready() const;
};

struct LaunchMetrics {
    core::SimTime launch_time;
    double rate = 0.0;  // processes per second
};

/// T = max(ready) - dispatch_begin, R = processes / T. Throws
/// InvariantViolation for an empty record or T == 0.
LaunchMetrics launch_metrics(const LaunchRecord& record);

/// Split of the last-ready process's launch time into pipeline stages.
/// The five parts sum to T exactly.
struct LaunchBreakdown {
    core::SimTime tree;
    core::SimTime launcher;
    core::SimTime fork;
    core::SimTime load;
    core::SimTime fs;

    core::SimTime total() const { return tree + launcher + fork + load + fs; }
    double fs_fraction() const;
};

LaunchBreakdown critical_path(const LaunchRecord& record);

} // namespace ilaunch::launch
