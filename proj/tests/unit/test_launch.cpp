#include <ilaunch/cluster/cluster.hpp>
#include <ilaunch/core/engine.hpp>
#include <ilaunch/core/error.hpp>
#include <ilaunch/launch/launcher.hpp>
#include <ilaunch/sim/sweep.hpp>
#include <ilaunch/workload/scenario.hpp>

#include <support/fifo_oracle.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

using namespace ilaunch;
using core::SimTime;
using launch::LaunchMode;
using launch::LaunchRecord;
using launch::TimingModel;

namespace {

SimTime s(double seconds) { return SimTime::from_seconds(seconds); }

struct Harness {
    core::Engine engine;
    cluster::Cluster cl;
    launch::Launcher launcher;
    std::vector<LaunchRecord> records;

    Harness(int nodes, TimingModel timing, LaunchMode mode, bool cached = true)
        : cl({}, nodes, workload::default_apps(), 20000.0)
        , launcher(engine, cl, timing, mode) {
        if (cached) {
            std::vector<cluster::NodeId> all(static_cast<std::size_t>(nodes));
            std::iota(all.begin(), all.end(), 1);
            cl.install_cache("octave", all);
            cl.install_cache("tensorflow", all);
        }
        launcher.set_callback([this](launch::LaunchId, LaunchRecord&& r) { records.push_back(std::move(r)); });
    }

    LaunchRecord run(int nodes, int procs, const std::string& app = "octave") {
        std::vector<launch::NodeLaunch> nl;
        for (int n = 1; n <= nodes; ++n) {
            nl.push_back({n, procs});
        }
        launcher.start(1, app, nl);
        engine.run();
        return records.back();
    }
};

TimingModel spec_fork() {
    TimingModel t;
    t.t_fork_s = 0.002;
    return t;
}

} // namespace

TEST(DispatchDepth, LevelBoundaries) {
    EXPECT_EQ(launch::dispatch_depth(1, 32), 1);
    EXPECT_EQ(launch::dispatch_depth(32, 32), 1);
    EXPECT_EQ(launch::dispatch_depth(33, 32), 2);
    EXPECT_EQ(launch::dispatch_depth(512, 32), 2);
    EXPECT_EQ(launch::dispatch_depth(1056, 32), 2);
    EXPECT_EQ(launch::dispatch_depth(1057, 32), 3);
    EXPECT_EQ(launch::dispatch_depth(512, 16), 3);
}

TEST(DispatchDepth, MatchesBreadthFirstTree) {
    for (int b : {2, 3, 16, 32}) {
        const auto levels = oracle::tree_levels(700, b);
        for (int i = 1; i <= 700; ++i) {
            ASSERT_EQ(launch::dispatch_depth(i, b), levels[static_cast<std::size_t>(i - 1)]) << i << " " << b;
        }
    }
}

TEST(TimingModel, Validation) {
    TimingModel t;
    t.fanout = 1;
    EXPECT_THROW(launch::validate(t), ConfigError);
    t = {};
    t.t_hop_s = 0.0;
    EXPECT_THROW(launch::validate(t), ConfigError);
    t = {};
    t.dispatch_rate = -1.0;
    EXPECT_THROW(launch::validate(t), ConfigError);
}

TEST(TwoTier, SingleProcessHandTimeline) {
    Harness h(1, spec_fork(), LaunchMode::TwoTier);
    const auto r = h.run(1, 1);
    const auto m = launch::launch_metrics(r);
    EXPECT_EQ(m.launch_time, s(0.16215));
    EXPECT_NEAR(m.rate, 1.0 / 0.16215, 1e-9);
    EXPECT_NEAR(m.rate, 6.17, 0.01);
}

TEST(SshTree, SingleProcessHandTimeline) {
    Harness h(1, spec_fork(), LaunchMode::SshTree);
    EXPECT_EQ(launch::launch_metrics(h.run(1, 1)).launch_time, s(0.35215));
}

TEST(SshTree, DepthAddsTreeLatency) {
    // 512 nodes: ssh tree depth 3 (0.6 s) versus two-tier depth 2 (0.02 s).
    Harness a(512, {}, LaunchMode::TwoTier);
    Harness b(512, {}, LaunchMode::SshTree);
    const auto ra = a.run(512, 1);
    const auto rb = b.run(512, 1);
    EXPECT_EQ(launch::critical_path(ra).tree, s(0.02));
    EXPECT_EQ(launch::critical_path(rb).tree, s(0.6));
}

TEST(PerProcess, SingleProcess) {
    // Two-tier minus tree and launcher terms, plus one dispatch interval.
    Harness h(1, spec_fork(), LaunchMode::PerProcess);
    EXPECT_EQ(launch::launch_metrics(h.run(1, 1)).launch_time, s(0.005 + 0.002 + 0.1 + 0.00015));
}

TEST(PerProcess, DispatchSpacing) {
    Harness h(2, {}, LaunchMode::PerProcess);
    const auto r = h.run(2, 3);
    for (std::size_t k = 0; k < r.procs.size(); ++k) {
        EXPECT_EQ(r.procs[k].received, SimTime::from_us(static_cast<std::int64_t>(k + 1) * 5000));
    }
}

TEST(PerProcess, DispatchAloneForBaselineSize) {
    // 41,472 processes at 200/s: the last dispatch lands at 207.36 s.
    TimingModel t;
    EXPECT_EQ(SimTime::from_us(std::llround(41472 * 1e6 / t.dispatch_rate)), s(207.36));
}

TEST(Cache, UncachedAppUsesCentralInstall) {
    Harness cached(1, spec_fork(), LaunchMode::TwoTier, true);
    Harness uncached(1, spec_fork(), LaunchMode::TwoTier, false);
    const auto tc = launch::launch_metrics(cached.run(1, 1)).launch_time;
    const auto tu = launch::launch_metrics(uncached.run(1, 1)).launch_time;
    EXPECT_EQ(tu - tc, s((1000 - 3) / 20000.0));
}

TEST(LaunchRecord, EmptyRecordIsAnError) {
    LaunchRecord r;
    EXPECT_THROW(launch::launch_metrics(r), InvariantViolation);
}

TEST(LaunchRecord, ZeroDurationIsAnError) {
    LaunchRecord r;
    r.procs.resize(1);
    EXPECT_THROW(launch::launch_metrics(r), InvariantViolation);
}

TEST(LaunchRecord, BreakdownSumsToLaunchTime) {
    Harness h(64, {}, LaunchMode::TwoTier);
    const auto r = h.run(64, 64);
    const auto b = launch::critical_path(r);
    EXPECT_EQ(b.total(), launch::launch_metrics(r).launch_time);
    EXPECT_GT(b.fs_fraction(), 0.0);
    EXPECT_LT(b.fs_fraction(), 1.0);
    for (const auto& p : r.procs) {
        EXPECT_GE(p.ready, r.dispatch_begin);
        EXPECT_GE(p.ready, p.enqueued);
        EXPECT_GE(p.enqueued, p.forked);
        EXPECT_GE(p.forked, p.launcher_ready);
        EXPECT_GE(p.launcher_ready, p.received);
    }
}

TEST(Oracle, SmallConfigurationsTwoTierAndSsh) {
    for (auto mode : {LaunchMode::TwoTier, LaunchMode::SshTree}) {
        for (int nodes = 1; nodes <= 3; ++nodes) {
            for (int procs = 1; procs <= 4; ++procs) {
                Harness h(nodes, {}, mode);
                const auto r = h.run(nodes, procs);
                oracle::Params p;
                if (mode == LaunchMode::SshTree) {
                    p.fanout = 16;
                    p.hop_us = 200'000;
                }
                const auto want = oracle::tree_launch(nodes, procs, p);
                ASSERT_EQ(want.size(), r.procs.size());
                for (std::size_t k = 0; k < want.size(); ++k) {
                    EXPECT_EQ(r.procs[k].ready.us(), want[k].ready_us);
                }
            }
        }
    }
}

TEST(SharedFs, TwoConcurrentLaunchesContend) {
    // Two 1x1 launches started together: the second one's requests queue
    // behind the first one's, as in one merged FIFO timeline.
    Harness h(2, spec_fork(), LaunchMode::TwoTier);
    h.launcher.start(1, "octave", {{1, 1}});
    h.launcher.start(2, "octave", {{2, 1}});
    h.engine.run();
    ASSERT_EQ(h.records.size(), 2U);
    EXPECT_EQ(h.records[0].last_ready(), s(0.16215));
    EXPECT_EQ(h.records[1].last_ready(), s(0.16230));
}

TEST(Monotonicity, SmallGrid) {
    workload::Scenario sc;
    sc.name = "mono";
    sc.apps = workload::default_apps();
    sc.policy.per_user_core_limit = 648 * 512;
    for (int n : {1, 2, 4, 8}) {
        SimTime prev;
        for (int p : {1, 2, 4, 8, 16}) {
            const auto c = sim::run_cell(sc, "octave", n, p);
            EXPECT_GE(c.launch_time, prev);
            EXPECT_LE(c.rate, 20000.0 / 3.0);
            prev = c.launch_time;
        }
    }
}
