#pragma once

#include <ilaunch/launch/launch_record.hpp>
#include <ilaunch/report/utilization.hpp>
#include <ilaunch/sched/job.hpp>
#include <ilaunch/sched/scheduler.hpp>
#include <ilaunch/workload/scenario.hpp>

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ilaunch::sim {

struct RunOptions {
    std::ostream* trace = nullptr;
    /// Full slot-conservation sweep after every event, plus end-of-run job conservation.
    bool check_invariants = false;
    /// Overrides the scenario horizon.
    std::optional<core::SimTime> horizon;
    /// Called after every processed event, for property checks.
    std::function<void(const core::Event&, const sched::Scheduler&, const cluster::Cluster&)> observer;
    /// Called for every allocation: (job, node, outside any reservation).
    std::function<void(sched::JobId, cluster::NodeId, bool)> on_allocation;
};

struct RunResult {
    std::vector<sched::Job> jobs;
    std::vector<launch::LaunchRecord> launches;
    report::UtilizationTrace utilization;
    core::SimTime end;
    bool truncated = false;  // stopped at the horizon with events left
    sched::SchedulerStats sched;
    std::int64_t rejected_reservations = 0;
    std::size_t events = 0;
    std::int64_t fs_requests = 0;
    core::SimTime fs_busy;
};

/// Runs the scenario's job stream (explicit plus generated jobs) once.
RunResult run_scenario(const workload::Scenario& scenario, const RunOptions& options = {});

} // namespace ilaunch::sim
