#include <ilaunch/core/engine.hpp>
#include <ilaunch/core/error.hpp>
#include <ilaunch/core/sim_time.hpp>

#include <gtest/gtest.h>

#include <sstream>

using ilaunch::ConfigError;
using ilaunch::InvariantViolation;
using ilaunch::core::Engine;
using ilaunch::core::Event;
using ilaunch::core::EventKind;
using ilaunch::core::SimTime;

namespace {

SimTime s(double seconds) { return SimTime::from_seconds(seconds); }

} // namespace

TEST(SimTime, RoundsToMicroseconds) {
    EXPECT_EQ(s(0.16215).us(), 162150);
    EXPECT_EQ(s(1.0000004).us(), 1000000);
    EXPECT_EQ(s(1.0000006).us(), 1000001);
    EXPECT_EQ(s(2.5).str(), "2.500000");
    EXPECT_EQ(SimTime::zero().str(), "0.000000");
}

TEST(SimTime, RejectsNegativeAndNonFinite) {
    EXPECT_THROW(s(-1.0), ConfigError);
    EXPECT_THROW(s(std::numeric_limits<double>::infinity()), ConfigError);
    EXPECT_THROW(SimTime::from_us(-1), InvariantViolation);
    EXPECT_THROW(s(1.0) - s(2.0), InvariantViolation);
}

TEST(Engine, ScheduleAtNowIsAcceptedWithFirstSeq) {
    Engine e;
    std::uint64_t seen = 0;
    e.on(EventKind::JobSubmit, [&](const Event& ev) { seen = ev.seq; });
    EXPECT_EQ(e.schedule(SimTime::zero(), EventKind::JobSubmit), 1U);
    e.run();
    EXPECT_EQ(seen, 1U);
}

TEST(Engine, SimultaneousEventsRunInSeqOrder) {
    Engine e;
    std::vector<std::int64_t> order;
    e.on(EventKind::JobSubmit, [&](const Event& ev) { order.push_back(ev.payload.job); });
    e.schedule(s(5.0), EventKind::JobSubmit, {.job = 1});
    e.schedule(s(5.0), EventKind::JobSubmit, {.job = 2});
    e.run();
    EXPECT_EQ(order, (std::vector<std::int64_t>{1, 2}));
    EXPECT_EQ(e.now(), s(5.0));
}

TEST(Engine, PastEventIsAnError) {
    Engine e;
    bool threw = false;
    e.on(EventKind::JobSubmit, [&](const Event&) {
        try {
            e.schedule(s(1.0), EventKind::JobSubmit);
        } catch (const InvariantViolation&) {
            threw = true;
        }
    });
    e.schedule(s(2.0), EventKind::JobSubmit);
    e.run();
    EXPECT_TRUE(threw);
}

TEST(Engine, EmptyQueueReturnsZero) {
    Engine e;
    EXPECT_EQ(e.run(), SimTime::zero());
    EXPECT_EQ(e.now(), SimTime::zero());
}

TEST(Engine, EventsProcessedInTimeOrder) {
    Engine e;
    std::vector<SimTime> seen;
    e.on(EventKind::TaskComplete, [&](const Event&) { seen.push_back(e.now()); });
    for (double t : {1.0, 3.0, 2.0}) {
        e.schedule(s(t), EventKind::TaskComplete);
    }
    EXPECT_EQ(e.run(), s(3.0));
    EXPECT_EQ(seen, (std::vector<SimTime>{s(1.0), s(2.0), s(3.0)}));
}

TEST(Engine, HorizonCutsAndAdvancesClock) {
    Engine e;
    std::vector<SimTime> seen;
    e.on(EventKind::TaskComplete, [&](const Event&) { seen.push_back(e.now()); });
    e.schedule(s(1.0), EventKind::TaskComplete);
    e.schedule(s(3.0), EventKind::TaskComplete);
    EXPECT_EQ(e.run(s(2.5)), s(2.5));
    EXPECT_EQ(seen, std::vector<SimTime>{s(1.0)});
    EXPECT_EQ(e.queued(), 1U);
}

TEST(Engine, EventAtHorizonIsProcessed) {
    Engine e;
    int n = 0;
    e.on(EventKind::TaskComplete, [&](const Event&) { ++n; });
    e.schedule(s(2.0), EventKind::TaskComplete);
    e.run(s(2.0));
    EXPECT_EQ(n, 1);
}

TEST(Engine, NowInsideHandler) {
    Engine e;
    SimTime inside;
    e.on(EventKind::TaskComplete, [&](const Event&) { inside = e.now(); });
    e.schedule(s(4.2), EventKind::TaskComplete);
    EXPECT_EQ(e.now(), SimTime::zero());
    e.run();
    EXPECT_EQ(inside, s(4.2));
}

TEST(Engine, MissingHandlerIsAnError) {
    Engine e;
    e.schedule(s(1.0), EventKind::TaskComplete);
    EXPECT_THROW(e.run(), InvariantViolation);
}

TEST(Engine, TraceLines) {
    Engine e;
    std::ostringstream trace;
    e.set_trace(&trace);
    e.on(EventKind::JobSubmit, [](const Event&) {});
    e.schedule(s(0.5), EventKind::JobSubmit, {.job = 7});
    e.run();
    EXPECT_EQ(trace.str(), "500000\t1\tjob-submit\tjob=7\n");
}

TEST(Engine, HandlersMayScheduleMore) {
    Engine e;
    int count = 0;
    e.on(EventKind::SchedulerCycle, [&](const Event&) {
        if (++count < 5) {
            e.schedule(e.now() + SimTime::from_us(10), EventKind::SchedulerCycle);
        }
    });
    e.schedule(SimTime::zero(), EventKind::SchedulerCycle);
    EXPECT_EQ(e.run(), SimTime::from_us(40));
    EXPECT_EQ(e.processed(), 5U);
}
