#pragma once

#include <ilaunch/cluster/central_fs.hpp>
#include <ilaunch/cluster/node.hpp>

#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ilaunch::cluster {

struct Allocation {
    AllocId id = 0;
    JobId job = 0;
    NodeId node = 0;
    std::vector<std::int64_t> tasks;
    std::int64_t slots = 0;
};

struct NodeState {
    NodeId node_id = 0;
    std::int64_t free_slots = 0;
    std::int64_t allocated_slots = 0;
    std::map<AllocId, std::int64_t> allocations;
    std::set<std::string> cached_apps;
};

/// Compute nodes plus the central filesystem for one simulation run.
class Cluster {
public:
    Cluster(NodeSpec spec, int node_count, std::vector<AppImage> apps, double fs_mu);

    const NodeSpec& spec() const { return spec_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    std::int64_t capacity() const { return capacity_; }
    std::int64_t total_slots() const { return capacity_ * node_count(); }
    std::int64_t allocated_slots() const { return allocated_total_; }

    const NodeState& node(NodeId id) const;
    std::int64_t free_slots(NodeId id) const { return node(id).free_slots; }
    bool node_idle(NodeId id) const { return free_slots(id) == capacity_; }

    /// Throws AllocationError when `slots` is zero or exceeds the node's free slots.
    AllocId allocate(JobId job, NodeId node, std::int64_t slots, std::vector<std::int64_t> tasks = {});
    /// Returns the freed slot count. Unknown ids throw InvariantViolation.
    std::int64_t release(AllocId id);
    const Allocation& allocation(AllocId id) const;
    std::size_t live_allocations() const { return allocations_.size(); }

    /// Adds `app` to the local cache of each listed node. Unknown apps throw ConfigError.
    void install_cache(const std::string& app, std::span<const NodeId> nodes);
    bool is_cached(NodeId node, const std::string& app) const;

    const AppImage& app(const std::string& name) const;
    bool has_app(const std::string& name) const { return apps_.contains(name); }
    /// Central-FS requests one process of `app` issues when starting on `node`.
    int fs_requests(NodeId node, const std::string& app) const;

    CentralFS& fs() { return fs_; }
    const CentralFS& fs() const { return fs_; }

    /// Full slot-conservation sweep over all nodes; throws InvariantViolation.
    void check_conservation() const;

    /// Invoked with the new cluster-wide allocated total after every change.
    void set_listener(std::function<void(std::int64_t)> listener) { listener_ = std::move(listener); }

private:
    NodeState& node_mut(NodeId id);
    void check_node(const NodeState& n) const;

    NodeSpec spec_;
    std::int64_t capacity_;
    std::vector<NodeState> nodes_;
    std::unordered_map<std::string, AppImage> apps_;
    std::unordered_map<AllocId, Allocation> allocations_;
    CentralFS fs_;
    AllocId next_alloc_ = 1;
    std::int64_t allocated_total_ = 0;
    std::function<void(std::int64_t)> listener_;
};

} // namespace ilaunch::cluster
