#include <ilaunch/sched/job.hpp>

#include <ilaunch/core/error.hpp>

#include <algorithm>
#include <fmt/format.h>

namespace ilaunch::sched {

std::int64_t task_count(const JobShape& shape) {
    return std::visit(
        [](const auto& s) -> std::int64_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(s)>, SyncParallel>) {
                return static_cast<std::int64_t>(s.n_nodes) * s.procs_per_node;
            } else {
                return s.n_tasks;
            }
        },
        shape);
}

std::int64_t requested_slots(const JobShape& shape) {
    if (const auto* a = std::get_if<JobArray>(&shape)) {
        return static_cast<std::int64_t>(a->n_tasks) * a->slots_per_task;
    }
    return task_count(shape);
}

std::string_view to_string(JobState state) {
    switch (state) {
    case JobState::Submitted: return "submitted";
    case JobState::Pending: return "pending";
    case JobState::Allocated: return "allocated";
    case JobState::Launching: return "launching";
    case JobState::Running: return "running";
    case JobState::Completed: return "completed";
    case JobState::Rejected: return "rejected";
    }
    return "unknown";
}

std::string_view to_string(RejectReason reason) {
    switch (reason) {
    case RejectReason::None: return "";
    case RejectReason::Infeasible: return "infeasible";
    case RejectReason::LimitExceeded: return "limit_exceeded";
    case RejectReason::NoResources: return "no_resources";
    }
    return "unknown";
}

core::SimTime Job::duration(std::int64_t task) const {
    if (durations.empty()) {
        return core::SimTime::zero();
    }
    if (durations.size() == 1) {
        return durations.front();
    }
    return durations.at(static_cast<std::size_t>(task));
}

void transition(Job& job, JobState next) {
    const auto from = job.state;
    const bool ok = (from == JobState::Submitted && (next == JobState::Pending || next == JobState::Rejected)) ||
                    (from == JobState::Pending && next == JobState::Allocated) ||
                    (from == JobState::Allocated && next == JobState::Launching) ||
                    (from == JobState::Launching && next == JobState::Running) ||
                    (from == JobState::Running && next == JobState::Completed);
    if (!ok) {
        throw InvariantViolation(
            fmt::format("job {}: illegal transition {} -> {}", job.id, to_string(from), to_string(next)));
    }
    job.state = next;
    job.history.push_back(next);
}

} // namespace ilaunch::sched
