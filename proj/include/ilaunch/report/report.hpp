#pragma once

#include <ilaunch/sim/simulation.hpp>
#include <ilaunch/sim/sweep.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace ilaunch::report {

inline constexpr int kSchemaVersion = 1;

enum class Format { Csv, Json };

std::optional<Format> parse_format(std::string_view text);

/// Per-job row. Absent stages (e.g. launch of a rejected job) stay empty.
struct JobMetrics {
    sched::JobId job_id = 0;
    std::string user;
    std::string app;
    bool interactive = false;
    sched::JobState state = sched::JobState::Submitted;
    sched::RejectReason reject_reason = sched::RejectReason::None;
    core::SimTime submit;
    std::optional<core::SimTime> sched_wait;  // submit -> immediate attempt start
    std::optional<core::SimTime> pending;     // time spent in the Pending state
    std::optional<core::SimTime> launch;
    std::optional<core::SimTime> run;
};

JobMetrics job_metrics(const sched::Job& job);

struct RunSummary {
    std::int64_t submitted = 0;
    std::int64_t completed = 0;
    std::int64_t rejected = 0;
    std::map<std::string, std::int64_t> rejections;
    double utilization = 0.0;  // over [0, end)
    core::SimTime end;
    bool truncated = false;
    std::int64_t max_sched_backlog = 0;
    std::int64_t peak_user_slots = 0;
    std::int64_t rejected_reservations = 0;
    std::optional<double> mean_pending_interactive_s;
    std::optional<double> mean_pending_batch_s;
    std::size_t events = 0;
    std::int64_t fs_requests = 0;
};

RunSummary summarize(const sim::RunResult& run);

/// RFC 4180 quoting: wrap in quotes when the field holds a comma, quote or newline.
std::string csv_field(std::string_view text);

std::string emit_jobs(std::string_view scenario, const sim::RunResult& run, Format format);
std::string emit_sweep(std::string_view scenario, const sim::SweepResult& sweep, Format format);

} // namespace ilaunch::report
