#include <ilaunch/cluster/cluster.hpp>

#include <ilaunch/core/error.hpp>

#include <fmt/format.h>
#include <utility>

namespace ilaunch::cluster {

std::int64_t node_capacity(const NodeSpec& spec) {
    return static_cast<std::int64_t>(spec.cores) * spec.threads_per_core * spec.oversub_max;
}

void validate(const NodeSpec& spec) {
    if (spec.cores < 1 || spec.threads_per_core < 1 || spec.oversub_max < 1) {
        throw ConfigError(fmt::format("node spec needs cores, threads_per_core and oversub_max >= 1 (got {}, {}, {})",
                                      spec.cores, spec.threads_per_core, spec.oversub_max));
    }
}

void validate(const AppImage& app) {
    if (app.name.empty()) {
        throw ConfigError("app name must not be empty");
    }
    if (app.f_central < 0) {
        throw ConfigError(fmt::format("app '{}': f_central must be >= 0", app.name));
    }
    if (app.f_central_nocache < app.f_central) {
        throw ConfigError(fmt::format("app '{}': f_central_nocache must be >= f_central", app.name));
    }
    if (!(app.t_local_load_s >= 0.0)) {
        throw ConfigError(fmt::format("app '{}': t_local_load_s must be >= 0", app.name));
    }
}

Cluster::Cluster(NodeSpec spec, int node_count, std::vector<AppImage> apps, double fs_mu)
    : spec_(spec)
    , capacity_(node_capacity(spec))
    , fs_(fs_mu) {
    validate(spec_);
    if (node_count < 1) {
        throw ConfigError(fmt::format("cluster needs at least one node, got {}", node_count));
    }
    nodes_.resize(static_cast<std::size_t>(node_count));
    for (int i = 0; i < node_count; ++i) {
        nodes_[static_cast<std::size_t>(i)].node_id = i + 1;
        nodes_[static_cast<std::size_t>(i)].free_slots = capacity_;
    }
    for (auto& a : apps) {
        validate(a);
        auto name = a.name;
        if (!apps_.emplace(name, std::move(a)).second) {
            throw ConfigError(fmt::format("app '{}' defined twice", name));
        }
    }
}

const NodeState& Cluster::node(NodeId id) const {
    if (id < 1 || id > node_count()) {
        throw InvariantViolation(fmt::format("node id {} out of range 1..{}", id, node_count()));
    }
    return nodes_[static_cast<std::size_t>(id - 1)];
}

NodeState& Cluster::node_mut(NodeId id) {
    return const_cast<NodeState&>(std::as_const(*this).node(id));
}

void Cluster::check_node(const NodeState& n) const {
    if (n.free_slots < 0 || n.free_slots > capacity_ || n.free_slots + n.allocated_slots != capacity_) {
        throw InvariantViolation(fmt::format("slot conservation broken on node {}: free={} allocated={} capacity={}",
                                             n.node_id, n.free_slots, n.allocated_slots, capacity_));
    }
}

AllocId Cluster::allocate(JobId job, NodeId node_id, std::int64_t slots, std::vector<std::int64_t> tasks) {
    auto& n = node_mut(node_id);
    if (slots <= 0) {
        throw AllocationError(fmt::format("job {}: degenerate request of {} slots", job, slots));
    }
    if (slots > n.free_slots) {
        throw AllocationError(fmt::format("job {}: node {} has {} free slots, {} requested", job, node_id,
                                          n.free_slots, slots));
    }
    const AllocId id = next_alloc_++;
    n.free_slots -= slots;
    n.allocated_slots += slots;
    n.allocations.emplace(id, slots);
    allocations_.emplace(id, Allocation{id, job, node_id, std::move(tasks), slots});
    allocated_total_ += slots;
    check_node(n);
    if (listener_) {
        listener_(allocated_total_);
    }
    return id;
}

std::int64_t Cluster::release(AllocId id) {
    auto it = allocations_.find(id);
    if (it == allocations_.end()) {
        throw InvariantViolation(fmt::format("release of unknown allocation {}", id));
    }
    const auto slots = it->second.slots;
    auto& n = node_mut(it->second.node);
    n.free_slots += slots;
    n.allocated_slots -= slots;
    n.allocations.erase(id);
    allocations_.erase(it);
    allocated_total_ -= slots;
    check_node(n);
    if (listener_) {
        listener_(allocated_total_);
    }
    return slots;
}

const Allocation& Cluster::allocation(AllocId id) const {
    auto it = allocations_.find(id);
    if (it == allocations_.end()) {
        throw InvariantViolation(fmt::format("unknown allocation {}", id));
    }
    return it->second;
}

void Cluster::install_cache(const std::string& app_name, std::span<const NodeId> nodes) {
    if (!has_app(app_name)) {
        throw ConfigError(fmt::format("cannot cache unknown app '{}'", app_name));
    }
    for (NodeId id : nodes) {
        node_mut(id).cached_apps.insert(app_name);
    }
}

bool Cluster::is_cached(NodeId node_id, const std::string& app_name) const {
    return node(node_id).cached_apps.contains(app_name);
}

const AppImage& Cluster::app(const std::string& name) const {
    auto it = apps_.find(name);
    if (it == apps_.end()) {
        throw ConfigError(fmt::format("unknown app '{}'", name));
    }
    return it->second;
}

int Cluster::fs_requests(NodeId node_id, const std::string& app_name) const {
    const auto& a = app(app_name);
    return is_cached(node_id, app_name) ? a.f_central : a.f_central_nocache;
}

void Cluster::check_conservation() const {
    std::int64_t total = 0;
    for (const auto& n : nodes_) {
        check_node(n);
        std::int64_t sum = 0;
        for (const auto& [id, slots] : n.allocations) {
            sum += slots;
        }
        if (sum != n.allocated_slots) {
            throw InvariantViolation(fmt::format("node {} allocation map sums to {} but {} recorded",
                                                 n.node_id, sum, n.allocated_slots));
        }
        total += n.allocated_slots;
    }
    if (total != allocated_total_) {
        throw InvariantViolation("cluster-wide allocated total out of sync");
    }
}

} // namespace ilaunch::cluster
