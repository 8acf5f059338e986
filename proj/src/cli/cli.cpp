#include <ilaunch/cli/cli.hpp>

#include <ilaunch/core/error.hpp>
#include <ilaunch/report/report.hpp>
#include <ilaunch/sim/simulation.hpp>
#include <ilaunch/sim/sweep.hpp>
#include <ilaunch/workload/builtins.hpp>
#include <ilaunch/workload/scenario.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <fstream>
#include <optional>
#include <thread>

namespace ilaunch::cli {

namespace {

struct Source {
    std::string scenario_path;
    std::string builtin_name;
    std::optional<std::uint64_t> seed;
};

struct Output {
    std::string format = "csv";
    std::string out_path;
    std::string trace_path;
};

void add_source(CLI::App& cmd, Source& src) {
    auto* s = cmd.add_option("--scenario", src.scenario_path, "Scenario file (JSON)");
    auto* b = cmd.add_option("--builtin", src.builtin_name, "Built-in scenario name");
    s->excludes(b);
    cmd.add_option("--seed", src.seed, "Override the scenario seed");
}

void add_output(CLI::App& cmd, Output& o) {
    cmd.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--out", o.out_path, "Write the report here instead of stdout");
    cmd.add_option("--trace", o.trace_path, "Write the event trace to this file");
}

workload::Scenario resolve(const Source& src) {
    if (src.scenario_path.empty() == src.builtin_name.empty()) {
        throw ilaunch::ConfigError("exactly one of --scenario or --builtin is required");
    }
    auto sc = src.builtin_name.empty() ? workload::load_scenario(src.scenario_path)
                                       : workload::builtin(src.builtin_name);
    if (src.seed) {
        sc.seed = *src.seed;
    }
    workload::validate(sc);
    return sc;
}

std::unique_ptr<std::ofstream> open_file(const std::string& path) {
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*f) {
        throw ilaunch::ConfigError(fmt::format("{}: cannot open for writing", path));
    }
    return f;
}

void write_report(const std::string& text, const Output& o, std::ostream& out) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    auto f = open_file(o.out_path);
    *f << text;
    if (!*f) {
        throw ilaunch::ConfigError(fmt::format("{}: write failed", o.out_path));
    }
}

int do_sweep(const workload::Scenario& sc, const workload::SweepGrid& grid, int workers, const Output& o,
             std::ostream& out, std::ostream& err) {
    std::unique_ptr<std::ofstream> trace;
    if (!o.trace_path.empty()) {
        trace = open_file(o.trace_path);
    }
    const auto result = sim::run_sweep(sc, grid, workers, trace.get());
    write_report(report::emit_sweep(sc.name, result, *report::parse_format(o.format)), o, out);
    for (const auto& [n, p] : result.infeasible) {
        err << fmt::format("infeasible cell skipped: nnode={} nproc={}\n", n, p);
    }
    return result.infeasible.empty() ? kExitOk : kExitConfig;
}

int default_workers() { return static_cast<int>(std::max(1U, std::thread::hardware_concurrency())); }

} // namespace

int exit_code_for(const std::exception& error) {
    return dynamic_cast<const ilaunch::ConfigError*>(&error) != nullptr ? kExitConfig : kExitInvariant;
}

void configure_logging() {
    auto logger = spdlog::stderr_color_mt("ilaunch");
    spdlog::set_default_logger(logger);
    auto level = spdlog::level::warn;
    if (const char* env = std::getenv("ILAUNCH_LOG"); env != nullptr && *env != '\0') {
        const std::string name(env);
        const auto parsed = spdlog::level::from_str(name);
        // from_str maps unknown names to off; keep the default for those.
        if (parsed != spdlog::level::off || name == "off") {
            level = parsed;
        }
    }
    spdlog::set_level(level);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulator for interactive launch on a shared HPC cluster", "ilaunch"};
    app.require_subcommand(1);

    Source sim_src;
    Output sim_out;
    std::optional<double> horizon_s;
    int sim_workers = default_workers();
    auto* simulate = app.add_subcommand("simulate", "Run a scenario's job stream, or its sweep grid");
    add_source(*simulate, sim_src);
    add_output(*simulate, sim_out);
    simulate->add_option("--horizon", horizon_s, "Stop the run at this simulated time (seconds)");
    simulate->add_option("--workers", sim_workers, "Worker threads for sweep scenarios")->check(CLI::PositiveNumber);

    Source sweep_src;
    Output sweep_out;
    int sweep_workers = default_workers();
    std::vector<int> nodes;
    std::vector<int> procs;
    std::string sweep_app;
    auto* sweep = app.add_subcommand("sweep", "Run a launch-time grid, one engine per cell");
    add_source(*sweep, sweep_src);
    add_output(*sweep, sweep_out);
    sweep->add_option("--workers", sweep_workers, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--nodes", nodes, "Node counts (comma separated)")->delimiter(',');
    sweep->add_option("--procs", procs, "Processes per node (comma separated)")->delimiter(',');
    sweep->add_option("--app", sweep_app, "Application image to launch");

    auto* list = app.add_subcommand("list-builtins", "Print the built-in scenario names");

    Source val_src;
    auto* validate_cmd = app.add_subcommand("validate", "Parse a scenario and print the resolved configuration");
    add_source(*validate_cmd, val_src);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (list->parsed()) {
            for (const auto& n : workload::builtin_names()) {
                out << n << "\n";
            }
            return kExitOk;
        }
        if (validate_cmd->parsed()) {
            out << workload::to_text(resolve(val_src));
            return kExitOk;
        }
        if (simulate->parsed()) {
            const auto sc = resolve(sim_src);
            const auto jobs = workload::resolve_jobs(sc);
            if (jobs.empty() && sc.sweep) {
                return do_sweep(sc, *sc.sweep, sim_workers, sim_out, out, err);
            }
            sim::RunOptions opts;
            opts.check_invariants = true;
            if (horizon_s) {
                opts.horizon = core::SimTime::from_seconds(*horizon_s);
            }
            std::unique_ptr<std::ofstream> trace;
            if (!sim_out.trace_path.empty()) {
                trace = open_file(sim_out.trace_path);
                opts.trace = trace.get();
            }
            const auto result = sim::run_scenario(sc, opts);
            write_report(report::emit_jobs(sc.name, result, *report::parse_format(sim_out.format)), sim_out, out);
            return kExitOk;
        }
        if (sweep->parsed()) {
            const auto sc = resolve(sweep_src);
            workload::SweepGrid grid = sc.sweep.value_or(workload::SweepGrid{});
            if (!nodes.empty()) {
                grid.nnode_list = nodes;
            }
            if (!procs.empty()) {
                grid.nproc_list = procs;
            }
            if (!sweep_app.empty()) {
                grid.app = sweep_app;
            }
            if (grid.nnode_list.empty() || grid.nproc_list.empty()) {
                throw ilaunch::ConfigError("sweep grid needs node and process lists (scenario sweep section or --nodes/--procs)");
            }
            return do_sweep(sc, grid, sweep_workers, sweep_out, out, err);
        }
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        err << (code == kExitConfig ? "error: " : "internal error: ") << e.what() << "\n";
        return code;
    }
    return kExitConfig;
}

} // namespace ilaunch::cli
