// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <ilaunch/core/error.hpp>
#include <ilaunch/report/report.hpp>
#include <ilaunch/report/utilization.hpp>
#include <ilaunch/sim/simulation.hpp>
#include <ilaunch/sim/sweep.hpp>
#include <ilaunch/workload/builtins.hpp>
#include <ilaunch/workload/scenario.hpp>

#include <support/fifo_oracle.hpp>
#include <support/options.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <thread>

using namespace ilaunch;
using core::SimTime;
using sched::JobState;
using sched::PolicyKind;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int workers() { return static_cast<int>(std::max(2U, std::thread::hardware_concurrency())); }

const sim::CellResult& cell(const sim::SweepResult& r, int nnode, int nproc) {
    for (const auto& c : r.cells) {
        if (c.nnode == nnode && c.nproc == nproc) {
            return c;
        }
    }
    throw InvariantViolation(fmt::format("cell {}x{} missing", nnode, nproc));
}

const sim::SweepResult& fig6() {
    static const sim::SweepResult r = [] {
        const auto sc = workload::builtin("fig6-grid");
        return sim::run_sweep(sc, *sc.sweep, workers());
    }();
    return r;
}

double octave_ceiling() {
    const auto sc = workload::builtin("fig6-grid");
    for (const auto& a : sc.apps) {
        if (a.name == "octave") {
            return sc.fs_mu / a.f_central;
        }
    }
    throw InvariantViolation("octave app missing");
}

Outcome headline(const std::string& builtin, int nnode, int nproc, double lo, double hi) {
    const auto sc = workload::builtin(builtin);
    const auto c = sim::run_cell(sc, sc.sweep->app, nnode, nproc);
    const double t = c.launch_time.seconds();
    return {t >= lo && t <= hi, fmt::format("{} {}x{} T={:.6f} s, want [{}, {}]", builtin, nnode, nproc, t, lo, hi)};
}

Outcome c1() { return headline("fig4-tensorflow", 512, 64, 3.0, 5.0); }

Outcome c2() {
    const auto sc = workload::builtin("fig5-octave");
    const auto c = sim::run_cell(sc, "octave", 512, 64);
    const double t = c.launch_time.seconds();
    return {t < 10.0, fmt::format("fig5-octave 512x64 T={:.6f} s, want < 10", t)};
}

Outcome c3() {
    const auto& c = cell(fig6(), 512, 512);
    const double t = c.launch_time.seconds();
    return {t < 40.0 && c.total_procs == 262144,
            fmt::format("fig6 512x512 total={} T={:.6f} s, want < 40", c.total_procs, t)};
}

Outcome c4() {
    const double ceiling = octave_ceiling();
    double max_rate = 0.0;
    double min_quadrant = 1e300;
    bool bound_ok = true;
    for (const auto& c : fig6().cells) {
        max_rate = std::max(max_rate, c.rate);
        bound_ok = bound_ok && c.rate <= ceiling;
        if (c.nnode >= 256 && c.nproc >= 128) {
            min_quadrant = std::min(min_quadrant, c.rate);
        }
    }
    const bool pass = bound_ok && max_rate >= 6000.0 && max_rate <= ceiling && min_quadrant >= 6000.0;
    return {pass, fmt::format("max R={:.1f}/s, min top-right R={:.1f}/s, ceiling {:.1f}/s, all cells under ceiling: {}",
                              max_rate, min_quadrant, ceiling, bound_ok)};
}

Outcome c5() {
    const auto sc = workload::builtin("nocache-baseline");
    const auto r = sim::run_sweep(sc, *sc.sweep, 1);
    const auto& c = cell(r, 648, 64);
    const double t = c.launch_time.seconds();
    return {t >= 1800.0 && t <= 3600.0, fmt::format("nocache-baseline 648x64 T={:.6f} s ({:.1f} min), want [1800, 3600]",
                                                    t, t / 60.0)};
}

Outcome c6() {
    auto sc = workload::builtin("fig5-octave");
    sc.launch.mode = launch::LaunchMode::SshTree;
    const auto c = sim::run_cell(sc, "octave", 157, 64);
    const double t = c.launch_time.seconds();
    return {t < 60.0, fmt::format("ssh tree 157x64 ({} procs) T={:.6f} s, want < 60", c.total_procs, t)};
}

Outcome c7() {
    int checked = 0;
    double worst = 1.0;
    std::string worst_cell;
    for (const auto& c : fig6().cells) {
        if (c.total_procs < 32768) {
            continue;
        }
        ++checked;
        const double f = c.breakdown.fs_fraction();
        if (f < worst) {
            worst = f;
            worst_cell = fmt::format("{}x{}", c.nnode, c.nproc);
        }
    }
    return {checked > 0 && worst > 0.8,
            fmt::format("{} cells with >= 32768 procs, lowest FS-wait share {:.4f} at {}, want > 0.8", checked, worst,
                        worst_cell)};
}

Outcome c8() {
    int configs = 0;
    int mismatches = 0;
    for (auto mode : {launch::LaunchMode::TwoTier, launch::LaunchMode::SshTree}) {
        for (int n = 1; n <= 3; ++n) {
            for (int p = 1; p <= 4; ++p) {
                auto sc = workload::builtin("fig6-grid");
                sc.launch.mode = mode;
                launch::LaunchRecord rec;
                sim::run_cell(sc, "octave", n, p, {}, &rec);
                oracle::Params op;
                const auto& t = sc.launch.timing;
                const bool ssh = mode == launch::LaunchMode::SshTree;
                op.fanout = ssh ? t.ssh_fanout : t.fanout;
                op.hop_us = SimTime::from_seconds(ssh ? t.t_ssh_hop_s : t.t_hop_s).us();
                op.launcher_us = SimTime::from_seconds(t.t_launcher_start_s).us();
                op.fork_us = SimTime::from_seconds(t.t_fork_s).us();
                op.load_us = 100'000;
                op.requests = 3;
                op.per_request_us = 50;
                const auto want = oracle::tree_launch(n, p, op);
                ++configs;
                if (want.size() != rec.procs.size()) {
                    ++mismatches;
                    continue;
                }
                for (std::size_t k = 0; k < want.size(); ++k) {
                    // Ready times are relative to dispatch begin in the oracle.
                    if ((rec.procs[k].ready - rec.dispatch_begin).us() != want[k].ready_us) {
                        ++mismatches;
                        break;
                    }
                }
            }
        }
    }
    return {configs == 24 && mismatches == 0,
            fmt::format("{} configurations (12 per mode), {} mismatching", configs, mismatches)};
}

workload::Scenario policy_compare(PolicyKind kind) {
    auto sc = workload::builtin("policy-compare");
    sc.seed = 42;
    sc.policy.kind = kind;
    return sc;
}

Outcome c9() {
    std::vector<std::string> notes;
    bool pass = true;

    // (a) interactive jobs never wait in Pending under InteractiveWithLimits.
    const auto iwl_sc = policy_compare(PolicyKind::InteractiveWithLimits);
    std::set<std::string> users;
    for (const auto& j : workload::resolve_jobs(iwl_sc)) {
        users.insert(j.user);
    }
    std::int64_t worst_user = 0;
    sim::RunOptions opt;
    opt.check_invariants = true;
    opt.observer = [&](const core::Event&, const sched::Scheduler& sch, const cluster::Cluster&) {
        for (const auto& u : users) {
            worst_user = std::max(worst_user, sch.user_allocated(u));
        }
    };
    const auto iwl = sim::run_scenario(iwl_sc, opt);
    int interactive = 0;
    int bad = 0;
    for (const auto& j : iwl.jobs) {
        if (!j.interactive) {
            continue;
        }
        ++interactive;
        const bool zero_pending = j.pending_since && j.allocated_at && *j.allocated_at == *j.pending_since;
        if (!(zero_pending || j.state == JobState::Rejected)) {
            ++bad;
        }
    }
    const bool a = interactive > 0 && bad == 0;
    notes.push_back(fmt::format("(a) {} interactive, {} with pending > 0: {}", interactive, bad, a ? "ok" : "FAIL"));

    // (b) per-user limit at every event boundary.
    const auto limit = iwl_sc.policy.per_user_core_limit;
    const bool b = worst_user <= limit && worst_user > 0;
    notes.push_back(fmt::format("(b) peak per-user slots {} <= limit {}: {}", worst_user, limit, b ? "ok" : "FAIL"));

    // (c) utilization over a common window.
    const auto batch = sim::run_scenario(policy_compare(PolicyKind::AllBatch), support::checked());
    const auto end = max(batch.end, iwl.end);
    const double ub = report::utilization(batch.utilization, SimTime::zero(), end);
    const double ui = report::utilization(iwl.utilization, SimTime::zero(), end);
    const bool c = ub >= ui;
    notes.push_back(fmt::format("(c) utilization AllBatch {:.4f} >= InteractiveWithLimits {:.4f} over [0, {:.1f}] s: {}",
                                ub, ui, end.seconds(), c ? "ok" : "FAIL"));

    // (d) scheduler flooding under AllImmediate.
    auto flood = policy_compare(PolicyKind::AllImmediate);
    flood.generator->arrival = workload::ArrivalKind::Burst;
    flood.generator->at_s = 0.0;
    flood.generator->count = 1000;
    flood.scheduler.t_sched_op_s = 0.001;
    const auto fr = sim::run_scenario(flood, support::checked());
    const auto& last = fr.jobs.at(999);
    const double delay = (*last.attempt_start - last.submit_time).seconds();
    const bool d = fr.sched.max_backlog > 0 && delay >= 0.9;
    notes.push_back(fmt::format("(d) peak backlog {}, 1000th attempt delayed {:.6f} s: {}", fr.sched.max_backlog, delay,
                                d ? "ok" : "FAIL"));

    pass = a && b && c && d;
    std::string detail;
    for (const auto& n : notes) {
        detail += (detail.empty() ? "" : "; ") + n;
    }
    return {pass, detail};
}

Outcome c10() {
    workload::Scenario sc;
    sc.name = "two-task";
    sc.apps = workload::default_apps();
    sc.cluster.nodes = 1;
    sc.policy.per_user_core_limit = 512;
    workload::JobSpec j;
    j.durations_s = {1.0, 10.0};

    j.shape = sched::JobArray{2, 256};
    sc.jobs = {j};
    const auto arr = sim::run_scenario(sc, support::checked());
    j.shape = sched::SyncParallel{1, 2};
    sc.jobs = {j};
    const auto gang = sim::run_scenario(sc, support::checked());

    const auto eps = SimTime::from_us(1);
    const auto ra = *arr.jobs[0].running_at;
    const auto rg = *gang.jobs[0].running_at;
    const auto one = SimTime::from_seconds(1.0);
    const auto ten = SimTime::from_seconds(10.0);
    const bool array_ok = arr.utilization.value_at(ra) == 512 && arr.utilization.value_at(ra + one) == 256 &&
                          arr.utilization.value_at(ra + ten - eps) == 256 && arr.utilization.value_at(ra + ten) == 0;
    bool gang_ok = gang.utilization.value_at(rg + ten) == 0;
    for (const auto& [t, v] : gang.utilization.steps()) {
        if (t >= rg && t < rg + ten && v != 512) {
            gang_ok = false;
        }
    }
    return {array_ok && gang_ok,
            fmt::format("array: {} slots at +0, {} at +1 s, {} at +10 s; gang: {} at +1 s, {} at +10 s-1us, {} at +10 s",
                        arr.utilization.value_at(ra), arr.utilization.value_at(ra + one),
                        arr.utilization.value_at(ra + ten), gang.utilization.value_at(rg + one),
                        gang.utilization.value_at(rg + ten - eps), gang.utilization.value_at(rg + ten))};
}

// FIFO service: any request enqueued strictly earlier completes no later.
bool fifo_ordered(std::vector<std::pair<SimTime, SimTime>> enq_ready) {
    std::sort(enq_ready.begin(), enq_ready.end());
    SimTime prev_group_max;
    SimTime group_max;
    std::optional<SimTime> group_t;
    for (const auto& [e, r] : enq_ready) {
        if (!group_t || e != *group_t) {
            prev_group_max = max(prev_group_max, group_max);
            group_t = e;
        }
        if (r < prev_group_max) {
            return false;
        }
        group_max = max(group_max, r);
    }
    return true;
}

Outcome c11() {
    std::vector<std::string> failures;
    int scenarios = 0;

    // Conservation and FIFO on every built-in and every shipped scenario file.
    std::vector<workload::Scenario> all;
    for (const auto& n : workload::builtin_names()) {
        all.push_back(workload::builtin(n));
    }
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(ILAUNCH_SCENARIO_DIR)) {
        if (e.path().extension() == ".json") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        all.push_back(workload::load_scenario(f));
    }
    for (const auto& sc : all) {
        ++scenarios;
        try {
            if (!workload::resolve_jobs(sc).empty()) {
                const auto run = sim::run_scenario(sc, support::checked());
                std::vector<std::pair<SimTime, SimTime>> fs;
                for (const auto& rec : run.launches) {
                    for (const auto& p : rec.procs) {
                        fs.emplace_back(p.enqueued, p.ready);
                    }
                }
                if (!fifo_ordered(fs)) {
                    failures.push_back(sc.name + ": FS order");
                }
                const auto again = sim::run_scenario(sc, support::checked());
                if (report::emit_jobs(sc.name, run, report::Format::Json) !=
                    report::emit_jobs(sc.name, again, report::Format::Json)) {
                    failures.push_back(sc.name + ": rerun differs");
                }
            }
            if (sc.sweep) {
                auto grid = *sc.sweep;
                if (sc.name == "fig6-grid") {
                    continue;  // covered below
                }
                const auto r1 = sim::run_sweep(sc, grid, 1);
                const auto r2 = sim::run_sweep(sc, grid, workers());
                if (report::emit_sweep(sc.name, r1, report::Format::Csv) !=
                    report::emit_sweep(sc.name, r2, report::Format::Csv)) {
                    failures.push_back(sc.name + ": worker count changes output");
                }
                for (const auto& c : r1.cells) {
                    launch::LaunchRecord rec;
                    sim::run_cell(sc, grid.app, c.nnode, c.nproc, support::checked(), &rec);
                    std::vector<std::pair<SimTime, SimTime>> fs;
                    for (const auto& p : rec.procs) {
                        fs.emplace_back(p.enqueued, p.ready);
                    }
                    if (!fifo_ordered(fs)) {
                        failures.push_back(fmt::format("{} {}x{}: FS order", sc.name, c.nnode, c.nproc));
                    }
                }
            }
        } catch (const std::exception& e) {
            failures.push_back(sc.name + ": " + e.what());
        }
    }

    // Monotonicity of T over the fig6 grid.
    const auto& g = fig6();
    int mono_checks = 0;
    for (const auto& a : g.cells) {
        for (const auto& b : g.cells) {
            const bool along_proc = a.nnode == b.nnode && a.nproc < b.nproc;
            const bool along_node = a.nproc == b.nproc && a.nnode < b.nnode;
            if (along_proc || along_node) {
                ++mono_checks;
                if (b.launch_time < a.launch_time) {
                    failures.push_back(fmt::format("T not monotone: {}x{} -> {}x{}", a.nnode, a.nproc, b.nnode, b.nproc));
                }
            }
        }
    }

    // Byte-identical reruns and worker independence on the full fig6 grid.
    const auto sc6 = workload::builtin("fig6-grid");
    const auto text = report::emit_sweep(sc6.name, g, report::Format::Csv);
    const auto serial = report::emit_sweep(sc6.name, sim::run_sweep(sc6, *sc6.sweep, 1), report::Format::Csv);
    if (text != serial) {
        failures.push_back("fig6: worker count changes output");
    }
    if (std::count(text.begin(), text.end(), '\n') != 101) {
        failures.push_back("fig6: expected 100 rows");
    }
    for (int n : {1, 64, 512}) {
        for (int p : {1, 64, 512}) {
            launch::LaunchRecord rec;
            sim::run_cell(sc6, "octave", n, p, support::checked(), &rec);
            std::vector<std::pair<SimTime, SimTime>> fs;
            for (const auto& q : rec.procs) {
                fs.emplace_back(q.enqueued, q.ready);
            }
            if (!fifo_ordered(fs)) {
                failures.push_back(fmt::format("fig6 {}x{}: FS order", n, p));
            }
        }
    }

    std::string detail = fmt::format("{} scenarios, {} monotonicity pairs, {} grid rows", scenarios, mono_checks,
                                     g.cells.size());
    for (const auto& f : failures) {
        detail += "; " + f;
    }
    return {failures.empty(), detail};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"TensorFlow headline", c1},
        {"Octave headline", c2},
        {"Max-scale headline", c3},
        {"Rate plateau", c4},
        {"Naive baseline", c5},
        {"ssh baseline", c6},
        {"Backpressure attribution", c7},
        {"Oracle equivalence", c8},
        {"Policy properties", c9},
        {"Allocation semantics", c10},
        {"Invariant suite", c11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, fmt::format("exception: {}", e.what())};
        }
        failed += o.pass ? 0 : 1;
        std::cout << fmt::format("{} {:>2} {}: {}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail)
                  << std::flush;
    }
    std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed),
                             criteria.size());
    return failed == 0 ? 0 : 1;
}
