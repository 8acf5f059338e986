#include <ilaunch/launch/launcher.hpp>

#include <ilaunch/core/error.hpp>

#include <cmath>
#include <fmt/format.h>

namespace ilaunch::launch {

using core::Event;
using core::EventKind;
using core::Payload;
using core::SimTime;

Launcher::Launcher(core::Engine& engine, cluster::Cluster& cluster, TimingModel timing, LaunchMode mode)
    : engine_(engine)
    , cluster_(cluster)
    , timing_(timing)
    , mode_(mode) {
    validate(timing_);
    const bool ssh = mode_ == LaunchMode::SshTree;
    hop_ = SimTime::from_seconds(ssh ? timing_.t_ssh_hop_s : timing_.t_hop_s);
    fanout_ = ssh ? timing_.ssh_fanout : timing_.fanout;
    launcher_start_ = SimTime::from_seconds(timing_.t_launcher_start_s);
    fork_ = SimTime::from_seconds(timing_.t_fork_s);

    engine_.on(EventKind::DispatchArrival, [this](const Event& ev) { on_dispatch_arrival(ev); });
    engine_.on(EventKind::LauncherReady, [this](const Event& ev) { on_launcher_ready(ev); });
    engine_.on(EventKind::ProcForked, [this](const Event& ev) { on_forked(ev); });
    engine_.on(EventKind::ProcLoaded, [this](const Event& ev) { on_loaded(ev); });
    engine_.on(EventKind::FsRequestDone, [this](const Event& ev) { on_fs_done(ev); });
}

LaunchId Launcher::start(cluster::JobId job, const std::string& app, std::vector<NodeLaunch> nodes) {
    if (nodes.empty()) {
        throw InvariantViolation(fmt::format("launch of job {} with no nodes", job));
    }
    const auto& image = cluster_.app(app);
    const LaunchId id = next_id_++;
    Active a;
    a.record.job = job;
    a.record.mode = mode_;
    a.record.app = app;
    a.record.dispatch_begin = engine_.now();
    a.record.node_count = static_cast<int>(nodes.size());
    a.load = SimTime::from_seconds(image.t_local_load_s);

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].procs < 1) {
            throw InvariantViolation(fmt::format("launch of job {}: node {} has {} processes", job, nodes[i].node,
                                                 nodes[i].procs));
        }
        a.first_proc.push_back(a.record.procs.size());
        a.fs_requests.push_back(cluster_.fs_requests(nodes[i].node, app));
        for (int j = 1; j <= nodes[i].procs; ++j) {
            ProcessTiming p;
            p.node_index = static_cast<int>(i) + 1;
            p.node = nodes[i].node;
            p.proc = j;
            a.record.procs.push_back(p);
        }
    }
    a.remaining = a.record.procs.size();
    const SimTime begin = a.record.dispatch_begin;
    auto& slot = active_.emplace(id, std::move(a)).first->second;

    if (mode_ == LaunchMode::PerProcess) {
        // The k-th process is dispatched individually at begin + k / dispatch_rate.
        for (std::size_t k = 0; k < slot.record.procs.size(); ++k) {
            const auto offset_us = std::llround(static_cast<double>(k + 1) * 1e6 / timing_.dispatch_rate);
            const auto& p = slot.record.procs[k];
            engine_.schedule(begin + SimTime::from_us(offset_us), EventKind::DispatchArrival,
                             Payload{job, id, p.node, static_cast<std::int64_t>(k)});
        }
    } else {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const int depth = dispatch_depth(static_cast<std::int64_t>(i) + 1, fanout_);
            engine_.schedule(begin + hop_ * depth, EventKind::DispatchArrival,
                             Payload{job, id, nodes[i].node, static_cast<std::int64_t>(i)});
        }
    }
    return id;
}

Launcher::Active& Launcher::active(LaunchId id) {
    auto it = active_.find(id);
    if (it == active_.end()) {
        throw InvariantViolation(fmt::format("event for unknown launch {}", id));
    }
    return it->second;
}

void Launcher::on_dispatch_arrival(const Event& ev) {
    auto& a = active(ev.payload.launch);
    const auto now = engine_.now();
    if (mode_ == LaunchMode::PerProcess) {
        auto& p = a.record.procs[static_cast<std::size_t>(ev.payload.item)];
        p.received = now;
        p.launcher_ready = now;
        engine_.schedule(now + fork_, EventKind::ProcForked, ev.payload);
        return;
    }
    const auto node_idx = static_cast<std::size_t>(ev.payload.item);
    const auto first = a.first_proc[node_idx];
    const auto last = node_idx + 1 < a.first_proc.size() ? a.first_proc[node_idx + 1] : a.record.procs.size();
    for (auto k = first; k < last; ++k) {
        a.record.procs[k].received = now;
    }
    engine_.schedule(now + launcher_start_, EventKind::LauncherReady, ev.payload);
}

void Launcher::on_launcher_ready(const Event& ev) {
    auto& a = active(ev.payload.launch);
    const auto now = engine_.now();
    const auto node_idx = static_cast<std::size_t>(ev.payload.item);
    const auto first = a.first_proc[node_idx];
    const auto last = node_idx + 1 < a.first_proc.size() ? a.first_proc[node_idx + 1] : a.record.procs.size();
    // The launcher forks and backgrounds its processes one after another.
    for (auto k = first; k < last; ++k) {
        auto& p = a.record.procs[k];
        p.launcher_ready = now;
        engine_.schedule(now + fork_ * p.proc, EventKind::ProcForked,
                         Payload{ev.payload.job, ev.payload.launch, p.node, static_cast<std::int64_t>(k)});
    }
}

void Launcher::on_forked(const Event& ev) {
    auto& a = active(ev.payload.launch);
    auto& p = a.record.procs[static_cast<std::size_t>(ev.payload.item)];
    p.forked = engine_.now();
    engine_.schedule(p.forked + a.load, EventKind::ProcLoaded, ev.payload);
}

void Launcher::on_loaded(const Event& ev) {
    auto& a = active(ev.payload.launch);
    auto& p = a.record.procs[static_cast<std::size_t>(ev.payload.item)];
    p.enqueued = engine_.now();
    const auto requests = a.fs_requests[static_cast<std::size_t>(p.node_index - 1)];
    const auto done = cluster_.fs().enqueue(requests, p.enqueued);
    engine_.schedule(done, EventKind::FsRequestDone, ev.payload);
}

void Launcher::on_fs_done(const Event& ev) {
    auto it = active_.find(ev.payload.launch);
    if (it == active_.end()) {
        throw InvariantViolation(fmt::format("event for unknown launch {}", ev.payload.launch));
    }
    auto& a = it->second;
    a.record.procs[static_cast<std::size_t>(ev.payload.item)].ready = engine_.now();
    if (--a.remaining > 0) {
        return;
    }
    LaunchRecord record = std::move(a.record);
    active_.erase(it);
    if (callback_) {
        callback_(ev.payload.launch, std::move(record));
    }
}

} // namespace ilaunch::launch
