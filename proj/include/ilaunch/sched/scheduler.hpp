#pragma once

#include <ilaunch/cluster/cluster.hpp>
#include <ilaunch/core/engine.hpp>
#include <ilaunch/launch/launcher.hpp>
#include <ilaunch/sched/job.hpp>
#include <ilaunch/sched/policy.hpp>

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace ilaunch::sched {

/// One allocation made by a scheduling cycle.
struct Decision {
    JobId job = 0;
    std::vector<cluster::NodeId> nodes;
    std::int64_t tasks = 0;
};

struct SchedulerStats {
    std::int64_t cycles = 0;
    std::int64_t examined = 0;
    std::int64_t attempts = 0;
    std::int64_t backlog = 0;      // immediate attempts booked but not yet started
    std::int64_t max_backlog = 0;
    std::int64_t peak_user_slots = 0;
    core::SimTime busy;            // total scheduler occupancy
    std::map<RejectReason, std::int64_t> rejections;
};

/// The scheduler proper: job lifecycle management, the periodic scheduling
/// task, immediate attempts, reservations, dispatch to the launcher and
/// release on task completion. All entry points run as engine event handlers.
class Scheduler {
public:
    Scheduler(core::Engine& engine, cluster::Cluster& cluster, launch::Launcher& launcher, Policy policy,
              SchedulerConfig config);

    /// Registers the job (its id becomes its index) and schedules its submission.
    JobId add_job(Job job);

    /// Pins nodes for a future window. Throws ReservationError when the
    /// policy does not use reservations, the window is invalid, or too few
    /// nodes remain after overlapping reservations.
    void add_reservation(const Reservation& res);

    void submit(JobId id);
    std::vector<Decision> scheduling_cycle();
    /// Immediate allocation attempt under InteractiveWithLimits or AllImmediate.
    bool try_immediate(JobId id);
    void on_task_complete(JobId id, std::int64_t task);

    const std::vector<Job>& jobs() const { return jobs_; }
    const Job& job(JobId id) const;
    const SchedulerStats& stats() const { return stats_; }
    const Policy& policy() const { return policy_; }
    std::int64_t user_allocated(const std::string& user) const;
    std::size_t queue_length() const { return queue_.size(); }
    /// Nodes currently pinned by a reservation that has not ended.
    std::vector<cluster::NodeId> pinned_nodes() const;
    std::vector<cluster::NodeId> reservation_nodes(const std::string& id) const;

    /// Receives every completed launch record.
    void set_launch_observer(std::function<void(const launch::LaunchRecord&)> obs) { launch_observer_ = std::move(obs); }
    /// Receives (job, node, general?) for every allocation, for exclusivity checks.
    void set_allocation_observer(std::function<void(JobId, cluster::NodeId, bool)> obs) {
        alloc_observer_ = std::move(obs);
    }

private:
    enum class TaskState : std::uint8_t { Waiting, Allocated, Running, Done };

    struct Runtime {
        std::vector<TaskState> tasks;
        std::vector<cluster::AllocId> task_allocs;  // job arrays
        std::vector<cluster::AllocId> gang_allocs;  // sync-parallel
        std::int64_t next_task = 0;
    };

    struct Batch {
        JobId job = 0;
        std::vector<std::int64_t> tasks;
    };

    struct ReservationState {
        Reservation spec;
        core::SimTime start;
        core::SimTime end;
        std::vector<cluster::NodeId> nodes;
        bool active = false;
        bool ended = false;
        std::deque<JobId> pending;
    };

    using Eligible = std::function<bool(cluster::NodeId)>;

    Job& job_mut(JobId id);
    bool feasible(const Job& job) const;
    void reject(Job& job, RejectReason reason);
    void enter_pending(Job& job);
    void enqueue(JobId id, bool at_head);
    void request_cycle();
    void book_attempt(JobId id);

    std::int64_t limit_headroom(const Job& job) const;
    /// Allocates what fits; returns tasks allocated (0 if nothing).
    std::int64_t allocate(Job& job, const Eligible& eligible, bool whole_job_only, bool general,
                          std::vector<cluster::NodeId>* nodes_out);
    void dispatch(Job& job, std::vector<launch::NodeLaunch> nodes, std::vector<std::int64_t> tasks);
    void on_launched(launch::LaunchId id, launch::LaunchRecord&& record);
    void on_resources_freed();
    void charge(const Job& job, std::int64_t slots);

    bool pinned(cluster::NodeId node) const;
    std::optional<std::size_t> reservation_of(const Job& job) const;
    void try_reservation_jobs(std::size_t res);
    void on_reservation_start(std::size_t res);
    void on_reservation_end(std::size_t res);

    core::Engine& engine_;
    cluster::Cluster& cluster_;
    launch::Launcher& launcher_;
    Policy policy_;
    SchedulerConfig config_;
    core::SimTime period_;
    core::SimTime op_cost_;

    std::vector<Job> jobs_;
    std::vector<Runtime> runtime_;
    std::deque<JobId> queue_;
    std::unordered_map<std::string, std::int64_t> user_alloc_;
    std::unordered_map<launch::LaunchId, Batch> batches_;

    std::vector<ReservationState> reservations_;
    std::unordered_map<std::string, std::size_t> reservation_index_;
    std::vector<std::vector<std::size_t>> node_pins_;  // per node (index id-1)

    core::SimTime busy_until_;
    bool cycle_scheduled_ = false;
    std::optional<core::SimTime> last_cycle_;
    SchedulerStats stats_;

    std::function<void(const launch::LaunchRecord&)> launch_observer_;
    std::function<void(JobId, cluster::NodeId, bool)> alloc_observer_;
};

} // namespace ilaunch::sched
