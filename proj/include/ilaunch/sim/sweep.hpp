#pragma once

#include <ilaunch/launch/launch_record.hpp>
#include <ilaunch/sim/simulation.hpp>
#include <ilaunch/workload/scenario.hpp>

#include <vector>

namespace ilaunch::sim {

struct CellResult {
    int nnode = 0;
    int nproc = 0;
    std::int64_t total_procs = 0;
    core::SimTime launch_time;
    double rate = 0.0;
    launch::LaunchBreakdown breakdown;
};

struct SweepResult {
    std::vector<CellResult> cells;
    std::vector<std::pair<int, int>> infeasible;
};

bool cell_feasible(const workload::Scenario& scenario, int nnode, int nproc);

/// One sync-parallel job of nnode x nproc processes, submitted at t=0 on an
/// otherwise idle cluster. Throws ConfigError for an infeasible cell.
CellResult run_cell(const workload::Scenario& scenario, const std::string& app, int nnode, int nproc,
                    const RunOptions& options = {}, launch::LaunchRecord* record_out = nullptr);

/// Runs every feasible (nnode, nproc) cell of the grid, each on its own
/// engine; `workers` threads share the cells. Output order is the grid order
/// (nodes outer, procs inner) regardless of worker count.
SweepResult run_sweep(const workload::Scenario& scenario, const workload::SweepGrid& grid, int workers,
                      std::ostream* trace = nullptr);

} // namespace ilaunch::sim
