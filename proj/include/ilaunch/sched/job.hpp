#pragma once

#include <ilaunch/cluster/node.hpp>
#include <ilaunch/core/sim_time.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ilaunch::sched {

using cluster::JobId;

/// MPI-style job: all nodes allocated together, all held until the last task ends.
struct SyncParallel {
    int n_nodes = 1;
    int procs_per_node = 1;
    friend bool operator==(const SyncParallel&, const SyncParallel&) = default;
};

/// Independent tasks, each allocated and released on its own.
struct JobArray {
    int n_tasks = 1;
    int slots_per_task = 1;
    friend bool operator==(const JobArray&, const JobArray&) = default;
};

using JobShape = std::variant<SyncParallel, JobArray>;

std::int64_t task_count(const JobShape& shape);
/// Slots charged against per-user limits for the whole job.
std::int64_t requested_slots(const JobShape& shape);

enum class JobState { Submitted, Pending, Allocated, Launching, Running, Completed, Rejected };

std::string_view to_string(JobState state);

enum class RejectReason { None, Infeasible, LimitExceeded, NoResources };

std::string_view to_string(RejectReason reason);

struct Job {
    JobId id = 0;
    std::string user;
    std::string app;
    JobShape shape;
    core::SimTime submit_time;
    std::int64_t priority = 0;  // lower runs first
    std::optional<std::string> reservation;
    bool interactive = false;
    /// One entry per task, or a single entry shared by all tasks.
    std::vector<core::SimTime> durations;

    JobState state = JobState::Submitted;
    std::vector<JobState> history{JobState::Submitted};
    RejectReason reject_reason = RejectReason::None;

    std::optional<core::SimTime> attempt_start;  // immediate scheduling attempt began
    std::optional<core::SimTime> pending_since;
    std::optional<core::SimTime> allocated_at;
    std::optional<core::SimTime> running_at;
    std::optional<core::SimTime> finished_at;    // completed or rejected
    std::optional<core::SimTime> launch_time;    // T of the first launch batch

    std::int64_t tasks_allocated = 0;
    std::int64_t tasks_done = 0;

    std::int64_t tasks() const { return task_count(shape); }
    core::SimTime duration(std::int64_t task) const;
};

/// Moves `job` to `next`, enforcing the lifecycle
/// Submitted -> Pending -> Allocated -> Launching -> Running -> Completed,
/// or Submitted -> Rejected. Illegal moves throw InvariantViolation.
void transition(Job& job, JobState next);

} // namespace ilaunch::sched
