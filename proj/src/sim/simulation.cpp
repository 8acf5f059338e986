#include <ilaunch/sim/simulation.hpp>

#include <ilaunch/cluster/cluster.hpp>
#include <ilaunch/core/engine.hpp>
#include <ilaunch/core/error.hpp>
#include <ilaunch/launch/launcher.hpp>

#include <algorithm>
#include <fmt/format.h>
#include <numeric>
#include <spdlog/spdlog.h>

namespace ilaunch::sim {

using core::SimTime;

namespace {

sched::Job make_job(const workload::JobSpec& spec) {
    sched::Job j;
    j.user = spec.user;
    j.app = spec.app;
    j.shape = spec.shape;
    j.submit_time = SimTime::from_seconds(spec.submit_s);
    j.reservation = spec.reservation;
    j.interactive = spec.interactive;
    for (double d : spec.durations_s) {
        j.durations.push_back(SimTime::from_seconds(d));
    }
    return j;
}

} // namespace

RunResult run_scenario(const workload::Scenario& sc, const RunOptions& options) {
    workload::validate(sc);

    core::Engine engine;
    cluster::Cluster cl(sc.cluster.node, sc.cluster.nodes, sc.apps, sc.fs_mu);
    std::vector<cluster::NodeId> all_nodes(static_cast<std::size_t>(cl.node_count()));
    std::iota(all_nodes.begin(), all_nodes.end(), 1);
    for (const auto& app : sc.cluster.cached_apps) {
        cl.install_cache(app, all_nodes);
    }
    launch::Launcher launcher(engine, cl, sc.launch.timing, sc.launch.mode);
    sched::Scheduler scheduler(engine, cl, launcher, sc.policy, sc.scheduler);

    RunResult r;
    r.utilization = report::UtilizationTrace(cl.total_slots());
    r.utilization.record(SimTime::zero(), 0);
    cl.set_listener([&](std::int64_t allocated) { r.utilization.record(engine.now(), allocated); });
    scheduler.set_launch_observer([&](const launch::LaunchRecord& rec) { r.launches.push_back(rec); });

    for (const auto& res : sc.reservations) {
        try {
            scheduler.add_reservation(res);
        } catch (const ReservationError& e) {
            spdlog::warn("{}", e.what());
            ++r.rejected_reservations;
        }
    }

    // Default priority is submission order.
    const auto specs = workload::resolve_jobs(sc);
    std::vector<std::size_t> order(specs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return specs[a].submit_s < specs[b].submit_s; });
    std::vector<std::int64_t> rank(specs.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        rank[order[i]] = static_cast<std::int64_t>(i);
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto job = make_job(specs[i]);
        job.priority = specs[i].priority.value_or(rank[i]);
        scheduler.add_job(std::move(job));
    }

    engine.set_trace(options.trace);
    if (options.on_allocation) {
        scheduler.set_allocation_observer(options.on_allocation);
    }
    if (options.check_invariants || options.observer) {
        engine.set_observer([&](const core::Event& ev) {
            if (options.check_invariants) {
                cl.check_conservation();
            }
            if (options.observer) {
                options.observer(ev, scheduler, cl);
            }
        });
    }
    std::optional<SimTime> horizon = options.horizon;
    if (!horizon && sc.horizon_s) {
        horizon = SimTime::from_seconds(*sc.horizon_s);
    }
    r.end = engine.run(horizon);
    r.truncated = engine.queued() > 0;

    cl.check_conservation();
    if (!r.truncated) {
        for (const auto& j : scheduler.jobs()) {
            if (j.state != sched::JobState::Completed && j.state != sched::JobState::Rejected) {
                throw InvariantViolation(fmt::format("job {} ended the run in state {}", j.id, to_string(j.state)));
            }
        }
        if (cl.allocated_slots() != 0 || cl.live_allocations() != 0) {
            throw InvariantViolation("slots still allocated after every job finished");
        }
    }

    r.jobs = scheduler.jobs();
    r.sched = scheduler.stats();
    r.events = engine.processed();
    r.fs_requests = cl.fs().total_requests();
    r.fs_busy = cl.fs().busy_time();
    return r;
}

} // namespace ilaunch::sim
