#pragma once

#include <ilaunch/cluster/cluster.hpp>
#include <ilaunch/core/engine.hpp>
#include <ilaunch/launch/launch_record.hpp>
#include <ilaunch/launch/timing_model.hpp>

#include <functional>
#include <unordered_map>
#include <vector>

namespace ilaunch::launch {

struct NodeLaunch {
    cluster::NodeId node = 0;
    int procs = 0;
};

using LaunchId = std::int64_t;

/// Drives process launches through the engine. FS requests from concurrent
/// launches share the cluster's central filesystem queue.
class Launcher {
public:
    using Callback = std::function<void(LaunchId, LaunchRecord&&)>;

    Launcher(core::Engine& engine, cluster::Cluster& cluster, TimingModel timing, LaunchMode mode);

    void set_callback(Callback cb) { callback_ = std::move(cb); }

    /// Begin launching at engine.now(). The callback fires once every
    /// process is ready.
    LaunchId start(cluster::JobId job, const std::string& app, std::vector<NodeLaunch> nodes);

    LaunchMode mode() const { return mode_; }
    const TimingModel& timing() const { return timing_; }
    std::size_t in_flight() const { return active_.size(); }

private:
    struct Active {
        LaunchRecord record;
        std::vector<std::size_t> first_proc;  // per node index, offset into record.procs
        std::vector<int> fs_requests;         // per node index
        core::SimTime load;
        std::size_t remaining = 0;
    };

    Active& active(LaunchId id);
    void on_dispatch_arrival(const core::Event& ev);
    void on_launcher_ready(const core::Event& ev);
    void on_forked(const core::Event& ev);
    void on_loaded(const core::Event& ev);
    void on_fs_done(const core::Event& ev);

    core::Engine& engine_;
    cluster::Cluster& cluster_;
    TimingModel timing_;
    LaunchMode mode_;
    core::SimTime hop_;
    core::SimTime launcher_start_;
    core::SimTime fork_;
    int fanout_;
    std::unordered_map<LaunchId, Active> active_;
    LaunchId next_id_ = 1;
    Callback callback_;
};

} // namespace ilaunch::launch
