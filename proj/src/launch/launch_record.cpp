#include <ilaunch/launch/launch_record.hpp>

#include <ilaunch/core/error.hpp>

#include <fmt/format.h>

namespace ilaunch::launch {

using core::SimTime;

namespace {

const ProcessTiming& last_process(const LaunchRecord& record) {
    if (record.procs.empty()) {
        throw InvariantViolation(fmt::format("launch record for job {} has no processes", record.job));
    }
    const ProcessTiming* last = &record.procs.front();
    for (const auto& p : record.procs) {
        if (p.ready > last->ready || (p.ready == last->ready && p.enqueued > last->enqueued)) {
            last = &p;
        }
    }
    return *last;
}

} // namespace

SimTime LaunchRecord::last_ready() const { return last_process(*this).ready; }

LaunchMetrics launch_metrics(const LaunchRecord& record) {
    const SimTime t = last_process(record).ready - record.dispatch_begin;
    if (t == SimTime::zero()) {
        throw InvariantViolation(fmt::format("launch of job {} took zero time", record.job));
    }
    return {t, static_cast<double>(record.procs.size()) / t.seconds()};
}

double LaunchBreakdown::fs_fraction() const {
    const auto t = total();
    return t == SimTime::zero() ? 0.0 : fs.seconds() / t.seconds();
}

LaunchBreakdown critical_path(const LaunchRecord& record) {
    const auto& p = last_process(record);
    return {
        p.received - record.dispatch_begin,
        p.launcher_ready - p.received,
        p.forked - p.launcher_ready,
        p.enqueued - p.forked,
        p.ready - p.enqueued,
    };
}

} // namespace ilaunch::launch
