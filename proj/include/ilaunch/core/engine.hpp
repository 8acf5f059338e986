#pragma once

#include <ilaunch/core/sim_time.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <queue>
#include <string_view>
#include <vector>

namespace ilaunch::core {

enum class EventKind : std::uint8_t {
    JobSubmit,
    SchedulerCycle,
    SchedAttempt,
    DispatchArrival,
    LauncherReady,
    ProcForked,
    ProcLoaded,
    FsRequestDone,
    TaskComplete,
    ReservationStart,
    ReservationEnd,
};

inline constexpr std::size_t kEventKindCount = 11;

std::string_view to_string(EventKind kind);

/// Kind-specific data. Unused fields stay at -1.
struct Payload {
    std::int64_t job = -1;
    std::int64_t launch = -1;
    std::int64_t node = -1;
    std::int64_t item = -1;
};

struct Event {
    SimTime time;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::JobSubmit;
    Payload payload;
};

using EventId = std::uint64_t;

/// Single-threaded discrete-event engine. Events are processed in (time, seq)
/// order; seq is assigned at scheduling time so simultaneous events run FIFO.
class Engine {
public:
    using Handler = std::function<void(const Event&)>;

    Engine() = default;
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    void on(EventKind kind, Handler handler);

    /// Enqueue an event. Scheduling before now() throws InvariantViolation.
    EventId schedule(SimTime t, EventKind kind, Payload payload = {});

    /// Process events until the queue drains or the next event lies beyond
    /// `horizon`. Events at exactly the horizon are processed.
    SimTime run(std::optional<SimTime> horizon = std::nullopt);

    SimTime now() const { return now_; }
    std::size_t processed() const { return processed_; }
    std::size_t scheduled() const { return next_seq_ - 1; }
    std::size_t queued() const { return queue_.size(); }

    /// One tab-separated line per processed event: time_us, seq, kind, payload.
    void set_trace(std::ostream* out) { trace_ = out; }

    /// Called after every handler returns; used for invariant checks.
    void set_observer(Handler observer) { observer_ = std::move(observer); }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) {
                return a.time > b.time;
            }
            return a.seq > b.seq;
        }
    };

    void write_trace(const Event& ev);

    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::array<Handler, kEventKindCount> handlers_{};
    Handler observer_;
    std::ostream* trace_ = nullptr;
    SimTime now_;
    std::uint64_t next_seq_ = 1;
    std::size_t processed_ = 0;
    bool running_ = false;
};

} // namespace ilaunch::core
