#include <ilaunch/sched/scheduler.hpp>

#include <ilaunch/core/error.hpp>

#include <algorithm>
#include <fmt/format.h>
#include <limits>
#include <tuple>
#include <utility>
#include <spdlog/spdlog.h>

namespace ilaunch::sched {

using cluster::NodeId;
using core::Event;
using core::EventKind;
using core::Payload;
using core::SimTime;

namespace {

constexpr auto kUnlimited = std::numeric_limits<std::int64_t>::max();

} // namespace

Scheduler::Scheduler(core::Engine& engine, cluster::Cluster& cluster, launch::Launcher& launcher, Policy policy,
                     SchedulerConfig config)
    : engine_(engine)
    , cluster_(cluster)
    , launcher_(launcher)
    , policy_(policy)
    , config_(config)
    , node_pins_(static_cast<std::size_t>(cluster.node_count())) {
    validate(config_);
    validate(policy_);
    period_ = SimTime::from_seconds(config_.period_s);
    op_cost_ = SimTime::from_seconds(config_.t_sched_op_s);

    engine_.on(EventKind::JobSubmit, [this](const Event& ev) { submit(ev.payload.job); });
    engine_.on(EventKind::SchedulerCycle, [this](const Event&) { scheduling_cycle(); });
    engine_.on(EventKind::SchedAttempt, [this](const Event& ev) {
        --stats_.backlog;
        ++stats_.attempts;
        job_mut(ev.payload.job).attempt_start = engine_.now();
        try_immediate(ev.payload.job);
    });
    engine_.on(EventKind::TaskComplete, [this](const Event& ev) { on_task_complete(ev.payload.job, ev.payload.item); });
    engine_.on(EventKind::ReservationStart,
               [this](const Event& ev) { on_reservation_start(static_cast<std::size_t>(ev.payload.item)); });
    engine_.on(EventKind::ReservationEnd,
               [this](const Event& ev) { on_reservation_end(static_cast<std::size_t>(ev.payload.item)); });
    launcher_.set_callback([this](launch::LaunchId id, launch::LaunchRecord&& rec) { on_launched(id, std::move(rec)); });
}

JobId Scheduler::add_job(Job job) {
    job.id = static_cast<JobId>(jobs_.size());
    job.state = JobState::Submitted;
    job.history = {JobState::Submitted};
    const auto t = job.submit_time;
    jobs_.push_back(std::move(job));
    runtime_.emplace_back();
    engine_.schedule(t, EventKind::JobSubmit, Payload{jobs_.back().id});
    return jobs_.back().id;
}

const Job& Scheduler::job(JobId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= jobs_.size()) {
        throw InvariantViolation(fmt::format("unknown job {}", id));
    }
    return jobs_[static_cast<std::size_t>(id)];
}

Job& Scheduler::job_mut(JobId id) { return const_cast<Job&>(std::as_const(*this).job(id)); }

std::int64_t Scheduler::user_allocated(const std::string& user) const {
    auto it = user_alloc_.find(user);
    return it == user_alloc_.end() ? 0 : it->second;
}

bool Scheduler::feasible(const Job& job) const {
    if (!cluster_.has_app(job.app)) {
        return false;
    }
    const auto n = job.tasks();
    if (!job.durations.empty() && job.durations.size() != 1 && static_cast<std::int64_t>(job.durations.size()) != n) {
        return false;
    }
    if (const auto* s = std::get_if<SyncParallel>(&job.shape)) {
        return s->n_nodes >= 1 && s->procs_per_node >= 1 && s->n_nodes <= cluster_.node_count() &&
               s->procs_per_node <= cluster_.capacity();
    }
    const auto& a = std::get<JobArray>(job.shape);
    return a.n_tasks >= 1 && a.slots_per_task >= 1 && a.slots_per_task <= cluster_.capacity();
}

void Scheduler::reject(Job& job, RejectReason reason) {
    transition(job, JobState::Rejected);
    job.reject_reason = reason;
    job.finished_at = engine_.now();
    ++stats_.rejections[reason];
    spdlog::debug("t={} job {} rejected: {}", engine_.now().str(), job.id, to_string(reason));
}

void Scheduler::enter_pending(Job& job) {
    transition(job, JobState::Pending);
    job.pending_since = engine_.now();
}

void Scheduler::enqueue(JobId id, bool at_head) {
    if (at_head) {
        queue_.push_front(id);
    } else {
        auto pos = std::upper_bound(queue_.begin(), queue_.end(), id, [&](JobId a, JobId b) {
            const auto& ja = job(a);
            const auto& jb = job(b);
            return std::tie(ja.priority, ja.id) < std::tie(jb.priority, jb.id);
        });
        queue_.insert(pos, id);
    }
    request_cycle();
}

void Scheduler::request_cycle() {
    if (cycle_scheduled_) {
        return;
    }
    const auto now = engine_.now().us();
    const auto p = period_.us();
    auto next = SimTime::from_us((now + p - 1) / p * p);
    if (last_cycle_ && next <= *last_cycle_) {
        next = *last_cycle_ + period_;
    }
    engine_.schedule(next, EventKind::SchedulerCycle);
    cycle_scheduled_ = true;
}

void Scheduler::book_attempt(JobId id) {
    const auto start = max(engine_.now(), busy_until_);
    busy_until_ = start + op_cost_;
    stats_.busy += op_cost_;
    ++stats_.backlog;
    stats_.max_backlog = std::max(stats_.max_backlog, stats_.backlog);
    engine_.schedule(start, EventKind::SchedAttempt, Payload{id});
}

void Scheduler::submit(JobId id) {
    auto& j = job_mut(id);
    if (!feasible(j)) {
        reject(j, RejectReason::Infeasible);
        return;
    }
    const auto charge = requested_slots(j.shape);
    if (policy_.kind == PolicyKind::InteractiveWithLimits && charge > policy_.per_user_core_limit) {
        reject(j, RejectReason::LimitExceeded);
        return;
    }

    if (auto res = reservation_of(j)) {
        auto& r = reservations_[*res];
        enter_pending(j);
        r.pending.push_back(id);
        if (r.active) {
            try_reservation_jobs(*res);
        }
        return;
    }

    switch (policy_.kind) {
    case PolicyKind::AllBatch:
    case PolicyKind::BatchWithReservations:
        enter_pending(j);
        enqueue(id, false);
        break;
    case PolicyKind::InteractiveWithLimits:
        if (j.interactive) {
            book_attempt(id);
        } else {
            enter_pending(j);
            enqueue(id, false);
        }
        break;
    case PolicyKind::AllImmediate:
        book_attempt(id);
        break;
    }
}

std::int64_t Scheduler::limit_headroom(const Job& job) const {
    if (policy_.kind != PolicyKind::InteractiveWithLimits) {
        return kUnlimited;
    }
    return policy_.per_user_core_limit - user_allocated(job.user);
}

void Scheduler::charge(const Job& job, std::int64_t slots) {
    auto& used = user_alloc_[job.user];
    used += slots;
    stats_.peak_user_slots = std::max(stats_.peak_user_slots, used);
    if (used < 0) {
        throw InvariantViolation(fmt::format("user '{}' allocation went negative", job.user));
    }
    if (policy_.kind == PolicyKind::InteractiveWithLimits && used > policy_.per_user_core_limit) {
        throw InvariantViolation(fmt::format("user '{}' holds {} slots, limit {}", job.user, used,
                                             policy_.per_user_core_limit));
    }
}

bool Scheduler::try_immediate(JobId id) {
    auto& j = job_mut(id);
    const auto general = [this](NodeId n) { return !pinned(n); };
    if (policy_.kind == PolicyKind::InteractiveWithLimits) {
        if (requested_slots(j.shape) > limit_headroom(j)) {
            reject(j, RejectReason::LimitExceeded);
            return false;
        }
        // Interactive work either starts now or not at all.
        if (allocate(j, general, true, true, nullptr) > 0) {
            return true;
        }
        reject(j, RejectReason::NoResources);
        return false;
    }
    if (policy_.kind == PolicyKind::AllImmediate) {
        const auto got = allocate(j, general, false, true, nullptr);
        if (j.state == JobState::Submitted) {
            enter_pending(j);
        }
        if (j.tasks_allocated < j.tasks()) {
            enqueue(id, true);
        }
        return got > 0;
    }
    throw InvariantViolation(fmt::format("immediate attempt under {} policy", to_string(policy_.kind)));
}

std::int64_t Scheduler::allocate(Job& job, const Eligible& eligible, bool whole_job_only, bool general,
                                 std::vector<NodeId>* nodes_out) {
    auto& rt = runtime_[static_cast<std::size_t>(job.id)];
    if (rt.tasks.empty()) {
        rt.tasks.assign(static_cast<std::size_t>(job.tasks()), TaskState::Waiting);
    }
    const auto headroom = general ? limit_headroom(job) : kUnlimited;
    std::vector<launch::NodeLaunch> launch_nodes;
    std::vector<std::int64_t> tasks;

    if (const auto* s = std::get_if<SyncParallel>(&job.shape)) {
        if (job.tasks_allocated > 0 || requested_slots(job.shape) > headroom) {
            return 0;
        }
        std::vector<NodeId> nodes;
        for (NodeId n = 1; n <= cluster_.node_count() && static_cast<int>(nodes.size()) < s->n_nodes; ++n) {
            if (eligible(n) && cluster_.node_idle(n)) {
                nodes.push_back(n);
            }
        }
        if (static_cast<int>(nodes.size()) < s->n_nodes) {
            return 0;
        }
        // Whole nodes, all at once.
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            std::vector<std::int64_t> node_tasks;
            for (int p = 0; p < s->procs_per_node; ++p) {
                node_tasks.push_back(static_cast<std::int64_t>(i) * s->procs_per_node + p);
            }
            rt.gang_allocs.push_back(cluster_.allocate(job.id, nodes[i], cluster_.capacity(), node_tasks));
            launch_nodes.push_back({nodes[i], s->procs_per_node});
            tasks.insert(tasks.end(), node_tasks.begin(), node_tasks.end());
            if (alloc_observer_) {
                alloc_observer_(job.id, nodes[i], general);
            }
        }
        charge(job, requested_slots(job.shape));
        if (nodes_out) {
            *nodes_out = nodes;
        }
    } else {
        const auto& a = std::get<JobArray>(job.shape);
        const auto remaining = job.tasks() - rt.next_task;
        auto cap = std::min<std::int64_t>(remaining, headroom / a.slots_per_task);
        if (cap <= 0 || (whole_job_only && cap < remaining)) {
            return 0;
        }
        std::vector<std::pair<NodeId, std::int64_t>> placement;
        std::int64_t placed = 0;
        for (NodeId n = 1; n <= cluster_.node_count() && placed < cap; ++n) {
            if (!eligible(n)) {
                continue;
            }
            const auto fit = std::min(cluster_.free_slots(n) / a.slots_per_task, cap - placed);
            if (fit > 0) {
                placement.emplace_back(n, fit);
                placed += fit;
            }
        }
        if (placed == 0 || (whole_job_only && placed < remaining)) {
            return 0;
        }
        if (rt.task_allocs.empty()) {
            rt.task_allocs.assign(static_cast<std::size_t>(job.tasks()), 0);
        }
        for (const auto& [node, count] : placement) {
            for (std::int64_t k = 0; k < count; ++k) {
                const auto task = rt.next_task++;
                rt.task_allocs[static_cast<std::size_t>(task)] =
                    cluster_.allocate(job.id, node, a.slots_per_task, {task});
                tasks.push_back(task);
            }
            launch_nodes.push_back({node, static_cast<int>(count)});
            if (nodes_out) {
                nodes_out->push_back(node);
            }
            if (alloc_observer_) {
                alloc_observer_(job.id, node, general);
            }
        }
        charge(job, placed * a.slots_per_task);
    }

    for (auto t : tasks) {
        rt.tasks[static_cast<std::size_t>(t)] = TaskState::Allocated;
    }
    const auto count = static_cast<std::int64_t>(tasks.size());
    job.tasks_allocated += count;
    if (job.state == JobState::Submitted) {
        enter_pending(job);  // zero-length visit: allocated on first attempt
    }
    if (job.state == JobState::Pending) {
        transition(job, JobState::Allocated);
        job.allocated_at = engine_.now();
    }
    dispatch(job, std::move(launch_nodes), std::move(tasks));
    return count;
}

void Scheduler::dispatch(Job& job, std::vector<launch::NodeLaunch> nodes, std::vector<std::int64_t> tasks) {
    if (job.state == JobState::Allocated) {
        transition(job, JobState::Launching);
    } else if (job.state != JobState::Launching && job.state != JobState::Running) {
        throw InvariantViolation(fmt::format("dispatch of job {} in state {}", job.id, to_string(job.state)));
    }
    const auto id = launcher_.start(job.id, job.app, std::move(nodes));
    batches_.emplace(id, Batch{job.id, std::move(tasks)});
}

void Scheduler::on_launched(launch::LaunchId id, launch::LaunchRecord&& record) {
    auto it = batches_.find(id);
    if (it == batches_.end()) {
        throw InvariantViolation(fmt::format("completion of unknown launch {}", id));
    }
    const Batch batch = std::move(it->second);
    batches_.erase(it);
    auto& j = job_mut(batch.job);
    const auto now = engine_.now();
    if (!j.launch_time) {
        j.launch_time = now - record.dispatch_begin;
    }
    if (j.state == JobState::Launching) {
        transition(j, JobState::Running);
        j.running_at = now;
    }
    auto& rt = runtime_[static_cast<std::size_t>(j.id)];
    for (auto task : batch.tasks) {
        rt.tasks[static_cast<std::size_t>(task)] = TaskState::Running;
        engine_.schedule(now + j.duration(task), EventKind::TaskComplete, Payload{j.id, -1, -1, task});
    }
    if (launch_observer_) {
        launch_observer_(record);
    }
}

void Scheduler::on_task_complete(JobId id, std::int64_t task) {
    auto& j = job_mut(id);
    auto& rt = runtime_[static_cast<std::size_t>(id)];
    if (task < 0 || task >= static_cast<std::int64_t>(rt.tasks.size()) ||
        rt.tasks[static_cast<std::size_t>(task)] != TaskState::Running) {
        throw InvariantViolation(fmt::format("completion of unknown or idle task {} of job {}", task, id));
    }
    rt.tasks[static_cast<std::size_t>(task)] = TaskState::Done;
    ++j.tasks_done;
    bool freed = false;
    if (const auto* a = std::get_if<JobArray>(&j.shape)) {
        cluster_.release(rt.task_allocs[static_cast<std::size_t>(task)]);
        charge(j, -static_cast<std::int64_t>(a->slots_per_task));
        freed = true;
    } else if (j.tasks_done == j.tasks()) {
        for (auto alloc : rt.gang_allocs) {
            cluster_.release(alloc);
        }
        rt.gang_allocs.clear();
        charge(j, -requested_slots(j.shape));
        freed = true;
    }
    if (j.tasks_done == j.tasks()) {
        transition(j, JobState::Completed);
        j.finished_at = engine_.now();
    }
    if (freed) {
        on_resources_freed();
    }
}

void Scheduler::on_resources_freed() {
    for (std::size_t r = 0; r < reservations_.size(); ++r) {
        if (reservations_[r].active && !reservations_[r].pending.empty()) {
            try_reservation_jobs(r);
        }
    }
    if (!queue_.empty()) {
        request_cycle();
    }
}

std::vector<Decision> Scheduler::scheduling_cycle() {
    cycle_scheduled_ = false;
    const auto now = engine_.now();
    last_cycle_ = now;
    ++stats_.cycles;

    std::vector<Decision> decisions;
    const std::vector<JobId> candidates(queue_.begin(), queue_.end());
    const auto general = [this](NodeId n) { return !pinned(n); };
    std::int64_t examined = 0;
    for (JobId id : candidates) {
        if (examined >= config_.depth) {
            break;
        }
        ++examined;
        auto& j = job_mut(id);
        Decision d{id, {}, 0};
        d.tasks = allocate(j, general, false, true, &d.nodes);
        if (d.tasks > 0) {
            decisions.push_back(std::move(d));
        }
        if (j.tasks_allocated == j.tasks()) {
            queue_.erase(std::find(queue_.begin(), queue_.end(), id));
        }
    }
    stats_.examined += examined;
    const auto cost = op_cost_ * examined;
    busy_until_ = max(busy_until_, now) + cost;
    stats_.busy += cost;
    // Cycles only run after something changed; an unchanged queue would
    // produce the same (empty) decisions.
    if (!decisions.empty() && !queue_.empty()) {
        request_cycle();
    }
    return decisions;
}

bool Scheduler::pinned(NodeId node) const { return !node_pins_[static_cast<std::size_t>(node - 1)].empty(); }

std::vector<NodeId> Scheduler::pinned_nodes() const {
    std::vector<NodeId> out;
    for (NodeId n = 1; n <= cluster_.node_count(); ++n) {
        if (pinned(n)) {
            out.push_back(n);
        }
    }
    return out;
}

std::vector<NodeId> Scheduler::reservation_nodes(const std::string& id) const {
    auto it = reservation_index_.find(id);
    if (it == reservation_index_.end()) {
        return {};
    }
    return reservations_[it->second].nodes;
}

std::optional<std::size_t> Scheduler::reservation_of(const Job& job) const {
    if (!job.reservation || policy_.kind != PolicyKind::BatchWithReservations) {
        return std::nullopt;
    }
    auto it = reservation_index_.find(*job.reservation);
    if (it == reservation_index_.end() || reservations_[it->second].ended) {
        return std::nullopt;
    }
    return it->second;
}

void Scheduler::add_reservation(const Reservation& res) {
    if (policy_.kind != PolicyKind::BatchWithReservations) {
        throw ReservationError(fmt::format("reservation '{}' requires the batch_with_reservations policy", res.id));
    }
    if (reservation_index_.contains(res.id)) {
        throw ReservationError(fmt::format("reservation '{}' defined twice", res.id));
    }
    if (!(res.duration_s > 0.0)) {
        throw ReservationError(fmt::format("reservation '{}' needs a positive duration", res.id));
    }
    if (res.node_count < 1 || res.node_count > cluster_.node_count()) {
        throw ReservationError(fmt::format("reservation '{}' asks for {} nodes on a {}-node cluster", res.id,
                                           res.node_count, cluster_.node_count()));
    }
    const auto start = SimTime::from_seconds(res.start_s);
    const auto end = start + SimTime::from_seconds(res.duration_s);
    if (start < engine_.now()) {
        throw ReservationError(fmt::format("reservation '{}' starts in the past", res.id));
    }
    // Nodes are bound now: lowest ids not held by a time-overlapping reservation.
    std::vector<NodeId> chosen;
    for (NodeId n = 1; n <= cluster_.node_count() && static_cast<int>(chosen.size()) < res.node_count; ++n) {
        const auto& pins = node_pins_[static_cast<std::size_t>(n - 1)];
        const bool clash = std::any_of(pins.begin(), pins.end(), [&](std::size_t other) {
            const auto& o = reservations_[other];
            return o.start < end && start < o.end;
        });
        if (!clash) {
            chosen.push_back(n);
        }
    }
    if (static_cast<int>(chosen.size()) < res.node_count) {
        throw ReservationError(fmt::format("reservation '{}': overlapping reservations leave only {} of {} nodes",
                                           res.id, chosen.size(), res.node_count));
    }
    const auto idx = reservations_.size();
    for (auto n : chosen) {
        node_pins_[static_cast<std::size_t>(n - 1)].push_back(idx);
    }
    reservations_.push_back(ReservationState{res, start, end, std::move(chosen), false, false, {}});
    reservation_index_.emplace(res.id, idx);
    engine_.schedule(start, EventKind::ReservationStart, Payload{-1, -1, -1, static_cast<std::int64_t>(idx)});
    engine_.schedule(end, EventKind::ReservationEnd, Payload{-1, -1, -1, static_cast<std::int64_t>(idx)});
}

void Scheduler::try_reservation_jobs(std::size_t res) {
    auto& r = reservations_[res];
    const auto eligible = [this, res](NodeId n) {
        const auto& pins = node_pins_[static_cast<std::size_t>(n - 1)];
        return std::find(pins.begin(), pins.end(), res) != pins.end();
    };
    for (auto it = r.pending.begin(); it != r.pending.end();) {
        auto& j = job_mut(*it);
        allocate(j, eligible, false, false, nullptr);
        if (j.tasks_allocated == j.tasks()) {
            it = r.pending.erase(it);
        } else {
            ++it;
        }
    }
}

void Scheduler::on_reservation_start(std::size_t res) {
    reservations_[res].active = true;
    try_reservation_jobs(res);
}

void Scheduler::on_reservation_end(std::size_t res) {
    auto& r = reservations_[res];
    r.active = false;
    r.ended = true;
    for (auto n : r.nodes) {
        auto& pins = node_pins_[static_cast<std::size_t>(n - 1)];
        pins.erase(std::remove(pins.begin(), pins.end(), res), pins.end());
    }
    // Whatever did not get onto the reserved nodes competes as ordinary batch work.
    for (auto id : r.pending) {
        enqueue(id, false);
    }
    r.pending.clear();
    if (!queue_.empty()) {
        request_cycle();
    }
}

} // namespace ilaunch::sched
