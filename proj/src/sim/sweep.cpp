#include <ilaunch/sim/sweep.hpp>

#include <ilaunch/cluster/node.hpp>
#include <ilaunch/core/error.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fmt/format.h>
#include <thread>

namespace ilaunch::sim {

bool cell_feasible(const workload::Scenario& sc, int nnode, int nproc) {
    return nnode >= 1 && nproc >= 1 && nnode <= sc.cluster.nodes &&
           nproc <= cluster::node_capacity(sc.cluster.node);
}

CellResult run_cell(const workload::Scenario& scenario, const std::string& app, int nnode, int nproc,
                    const RunOptions& options, launch::LaunchRecord* record_out) {
    if (!cell_feasible(scenario, nnode, nproc)) {
        throw ConfigError(fmt::format("sweep cell {} nodes x {} procs does not fit the cluster", nnode, nproc));
    }
    auto sc = scenario;
    sc.sweep.reset();
    sc.generator.reset();
    sc.reservations.clear();
    workload::JobSpec job;
    job.user = "sweep";
    job.app = app;
    job.shape = sched::SyncParallel{nnode, nproc};
    job.interactive = true;
    sc.jobs = {job};

    auto run = run_scenario(sc, options);
    const auto& j = run.jobs.front();
    if (j.state == sched::JobState::Rejected) {
        throw ConfigError(fmt::format("sweep cell {} x {} was rejected by the scheduler ({})", nnode, nproc,
                                      to_string(j.reject_reason)));
    }
    if (run.launches.size() != 1) {
        throw InvariantViolation(fmt::format("sweep cell {} x {} produced {} launches", nnode, nproc,
                                             run.launches.size()));
    }
    const auto& rec = run.launches.front();
    const auto m = launch::launch_metrics(rec);
    CellResult c;
    c.nnode = nnode;
    c.nproc = nproc;
    c.total_procs = static_cast<std::int64_t>(nnode) * nproc;
    c.launch_time = m.launch_time;
    c.rate = m.rate;
    c.breakdown = launch::critical_path(rec);
    if (record_out) {
        *record_out = rec;
    }
    return c;
}

SweepResult run_sweep(const workload::Scenario& scenario, const workload::SweepGrid& grid, int workers,
                      std::ostream* trace) {
    SweepResult out;
    std::vector<std::pair<int, int>> cells;
    for (int n : grid.nnode_list) {
        for (int p : grid.nproc_list) {
            if (cell_feasible(scenario, n, p)) {
                cells.emplace_back(n, p);
            } else {
                out.infeasible.emplace_back(n, p);
            }
        }
    }

    auto one = [&](std::size_t i, std::ostream* tr) {
        const auto [n, p] = cells[i];
        RunOptions opts;
        opts.trace = tr;
        auto first = run_cell(scenario, grid.app, n, p, opts);
        for (int rep = 1; rep < grid.repetitions; ++rep) {
            const auto again = run_cell(scenario, grid.app, n, p);
            if (again.launch_time != first.launch_time) {
                throw InvariantViolation(fmt::format("cell {} x {} is not reproducible", n, p));
            }
        }
        return first;
    };

    out.cells.resize(cells.size());
    if (trace != nullptr || workers <= 1 || cells.size() <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (trace != nullptr) {
                *trace << fmt::format("# cell nnode={} nproc={}\n", cells[i].first, cells[i].second);
            }
            out.cells[i] = one(i, trace);
        }
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(cells.size());
    {
        std::vector<std::jthread> pool;
        const auto n_workers = std::min<std::size_t>(static_cast<std::size_t>(workers), cells.size());
        for (std::size_t w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (auto i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
                    try {
                        out.cells[i] = one(i, nullptr);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

} // namespace ilaunch::sim
