#include <ilaunch/core/engine.hpp>

#include <ilaunch/core/error.hpp>

#include <fmt/format.h>

namespace ilaunch::core {

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::JobSubmit: return "job-submit";
    case EventKind::SchedulerCycle: return "scheduler-cycle";
    case EventKind::SchedAttempt: return "sched-attempt";
    case EventKind::DispatchArrival: return "dispatch-arrival";
    case EventKind::LauncherReady: return "launcher-ready";
    case EventKind::ProcForked: return "proc-forked";
    case EventKind::ProcLoaded: return "proc-loaded";
    case EventKind::FsRequestDone: return "fs-request-done";
    case EventKind::TaskComplete: return "task-complete";
    case EventKind::ReservationStart: return "reservation-start";
    case EventKind::ReservationEnd: return "reservation-end";
    }
    return "unknown";
}

void Engine::on(EventKind kind, Handler handler) {
    handlers_[static_cast<std::size_t>(kind)] = std::move(handler);
}

EventId Engine::schedule(SimTime t, EventKind kind, Payload payload) {
    if (t < now_) {
        throw InvariantViolation(fmt::format("{} event scheduled in the past: t={} now={}",
                                             to_string(kind), t.str(), now_.str()));
    }
    const auto seq = next_seq_++;
    queue_.push(Event{t, seq, kind, payload});
    return seq;
}

SimTime Engine::run(std::optional<SimTime> horizon) {
    if (running_) {
        throw InvariantViolation("Engine::run called re-entrantly");
    }
    running_ = true;
    struct Guard {
        bool& flag;
        ~Guard() { flag = false; }
    } guard{running_};

    while (!queue_.empty()) {
        if (horizon && queue_.top().time > *horizon) {
            now_ = max(now_, *horizon);
            return now_;
        }
        const Event ev = queue_.top();
        queue_.pop();
        now_ = ev.time;
        ++processed_;
        if (trace_ != nullptr) {
            write_trace(ev);
        }
        const auto& handler = handlers_[static_cast<std::size_t>(ev.kind)];
        if (!handler) {
            throw InvariantViolation(fmt::format("no handler for {} event", to_string(ev.kind)));
        }
        handler(ev);
        if (observer_) {
            observer_(ev);
        }
    }
    return now_;
}

void Engine::write_trace(const Event& ev) {
    std::string line = fmt::format("{}\t{}\t{}\t", ev.time.us(), ev.seq, to_string(ev.kind));
    const auto& p = ev.payload;
    bool first = true;
    auto field = [&](std::string_view name, std::int64_t v) {
        if (v < 0) {
            return;
        }
        line += fmt::format("{}{}={}", first ? "" : ",", name, v);
        first = false;
    };
    field("job", p.job);
    field("launch", p.launch);
    field("node", p.node);
    field("item", p.item);
    if (first) {
        line += '-';
    }
    line += '\n';
    *trace_ << line;
}

} // namespace ilaunch::core
