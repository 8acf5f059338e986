#include <ilaunch/report/report.hpp>

#include <fmt/format.h>
#include <json.hpp>

namespace ilaunch::report {

using json = nlohmann::ordered_json;
using core::SimTime;

namespace {

std::string opt_seconds(const std::optional<SimTime>& t) { return t ? t->str() : std::string{}; }

json opt_json(const std::optional<SimTime>& t) { return t ? json(t->seconds()) : json(nullptr); }

std::string rate_str(double rate) { return fmt::format("{:.6f}", rate); }

} // namespace

std::optional<Format> parse_format(std::string_view text) {
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "json") {
        return Format::Json;
    }
    return std::nullopt;
}

JobMetrics job_metrics(const sched::Job& j) {
    JobMetrics m;
    m.job_id = j.id;
    m.user = j.user;
    m.app = j.app;
    m.interactive = j.interactive;
    m.state = j.state;
    m.reject_reason = j.reject_reason;
    m.submit = j.submit_time;
    if (j.attempt_start) {
        m.sched_wait = *j.attempt_start - j.submit_time;
    }
    if (j.pending_since && j.allocated_at) {
        m.pending = *j.allocated_at - *j.pending_since;
    }
    m.launch = j.launch_time;
    if (j.running_at && j.state == sched::JobState::Completed && j.finished_at) {
        m.run = *j.finished_at - *j.running_at;
    }
    return m;
}

RunSummary summarize(const sim::RunResult& run) {
    RunSummary s;
    s.submitted = static_cast<std::int64_t>(run.jobs.size());
    double pend_i = 0.0;
    double pend_b = 0.0;
    std::int64_t n_i = 0;
    std::int64_t n_b = 0;
    for (const auto& j : run.jobs) {
        if (j.state == sched::JobState::Completed) {
            ++s.completed;
        } else if (j.state == sched::JobState::Rejected) {
            ++s.rejected;
            ++s.rejections[std::string(to_string(j.reject_reason))];
        }
        const auto m = job_metrics(j);
        if (m.pending) {
            (j.interactive ? pend_i : pend_b) += m.pending->seconds();
            ++(j.interactive ? n_i : n_b);
        }
    }
    if (n_i > 0) {
        s.mean_pending_interactive_s = pend_i / static_cast<double>(n_i);
    }
    if (n_b > 0) {
        s.mean_pending_batch_s = pend_b / static_cast<double>(n_b);
    }
    s.end = run.end;
    s.truncated = run.truncated;
    s.utilization = run.end > SimTime::zero() ? utilization(run.utilization, SimTime::zero(), run.end) : 0.0;
    s.max_sched_backlog = run.sched.max_backlog;
    s.peak_user_slots = run.sched.peak_user_slots;
    s.rejected_reservations = run.rejected_reservations;
    s.events = run.events;
    s.fs_requests = run.fs_requests;
    return s;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string emit_jobs(std::string_view scenario, const sim::RunResult& run, Format format) {
    if (format == Format::Csv) {
        std::string out = "job_id,user,app,interactive,state,reject_reason,submit_s,sched_wait_s,pending_s,launch_s,run_s\n";
        for (const auto& j : run.jobs) {
            const auto m = job_metrics(j);
            out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", m.job_id, csv_field(m.user), csv_field(m.app),
                               m.interactive ? "true" : "false", to_string(m.state), to_string(m.reject_reason),
                               m.submit.str(), opt_seconds(m.sched_wait), opt_seconds(m.pending),
                               opt_seconds(m.launch), opt_seconds(m.run));
        }
        return out;
    }
    const auto s = summarize(run);
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["scenario"] = std::string(scenario);
    doc["kind"] = "jobs";
    json rej = json::object();
    for (const auto& [k, v] : s.rejections) {
        rej[k] = v;
    }
    doc["summary"] = json{{"submitted", s.submitted},
                          {"completed", s.completed},
                          {"rejected", s.rejected},
                          {"rejections", rej},
                          {"utilization", s.utilization},
                          {"end_s", s.end.seconds()},
                          {"truncated", s.truncated},
                          {"max_sched_backlog", s.max_sched_backlog},
                          {"peak_user_slots", s.peak_user_slots},
                          {"rejected_reservations", s.rejected_reservations},
                          {"mean_pending_interactive_s",
                           s.mean_pending_interactive_s ? json(*s.mean_pending_interactive_s) : json(nullptr)},
                          {"mean_pending_batch_s",
                           s.mean_pending_batch_s ? json(*s.mean_pending_batch_s) : json(nullptr)},
                          {"events", s.events},
                          {"fs_requests", s.fs_requests}};
    json jobs = json::array();
    for (const auto& j : run.jobs) {
        const auto m = job_metrics(j);
        jobs.push_back(json{{"job_id", m.job_id},
                            {"user", m.user},
                            {"app", m.app},
                            {"interactive", m.interactive},
                            {"state", std::string(to_string(m.state))},
                            {"reject_reason", std::string(to_string(m.reject_reason))},
                            {"submit_s", m.submit.seconds()},
                            {"sched_wait_s", opt_json(m.sched_wait)},
                            {"pending_s", opt_json(m.pending)},
                            {"launch_s", opt_json(m.launch)},
                            {"run_s", opt_json(m.run)}});
    }
    doc["jobs"] = std::move(jobs);
    return doc.dump(2) + "\n";
}

std::string emit_sweep(std::string_view scenario, const sim::SweepResult& sweep, Format format) {
    if (format == Format::Csv) {
        std::string out = "nnode,nproc,total_procs,launch_time_s,rate_procs_per_s\n";
        for (const auto& c : sweep.cells) {
            out += fmt::format("{},{},{},{},{}\n", c.nnode, c.nproc, c.total_procs, c.launch_time.str(),
                               rate_str(c.rate));
        }
        return out;
    }
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["scenario"] = std::string(scenario);
    doc["kind"] = "sweep";
    json cells = json::array();
    for (const auto& c : sweep.cells) {
        const auto& b = c.breakdown;
        cells.push_back(json{{"nnode", c.nnode},
                             {"nproc", c.nproc},
                             {"total_procs", c.total_procs},
                             {"launch_time_s", c.launch_time.seconds()},
                             {"rate_procs_per_s", c.rate},
                             {"critical_path_s", json{{"tree", b.tree.seconds()},
                                                      {"launcher", b.launcher.seconds()},
                                                      {"fork", b.fork.seconds()},
                                                      {"load", b.load.seconds()},
                                                      {"fs", b.fs.seconds()}}},
                             {"fs_fraction", b.fs_fraction()}});
    }
    doc["cells"] = std::move(cells);
    json bad = json::array();
    for (const auto& [n, p] : sweep.infeasible) {
        bad.push_back(json{{"nnode", n}, {"nproc", p}});
    }
    doc["infeasible"] = std::move(bad);
    return doc.dump(2) + "\n";
}

} // namespace ilaunch::report
