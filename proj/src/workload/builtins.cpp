#include <ilaunch/workload/builtins.hpp>

#include <ilaunch/core/error.hpp>

#include <fmt/format.h>

namespace ilaunch::workload {

namespace {

std::vector<int> powers_of_two(int max) {
    std::vector<int> out;
    for (int v = 1; v <= max; v *= 2) {
        out.push_back(v);
    }
    return out;
}

Scenario base(std::string name) {
    Scenario s;
    s.name = std::move(name);
    s.apps = default_apps();
    s.policy.per_user_core_limit = cluster::node_capacity(s.cluster.node) * s.cluster.nodes;
    return s;
}

Scenario launch_sweep(std::string name, std::vector<int> nodes, std::vector<int> procs, std::string app) {
    auto s = base(std::move(name));
    s.sweep = SweepGrid{std::move(nodes), std::move(procs), std::move(app), 1};
    return s;
}

} // namespace

std::vector<std::string> builtin_names() {
    return {"fig4-tensorflow", "fig5-octave", "fig6-grid", "nocache-baseline", "policy-compare"};
}

Scenario builtin(std::string_view name) {
    if (name == "fig4-tensorflow") {
        return launch_sweep("fig4-tensorflow", powers_of_two(512), {64}, "tensorflow");
    }
    if (name == "fig5-octave") {
        return launch_sweep("fig5-octave", powers_of_two(512), {64}, "octave");
    }
    if (name == "fig6-grid") {
        return launch_sweep("fig6-grid", powers_of_two(512), powers_of_two(512), "octave");
    }
    if (name == "nocache-baseline") {
        // Pre-tuning path: every process dispatched by the scheduler, installs on the central FS only.
        auto s = launch_sweep("nocache-baseline", {648}, {64}, "octave");
        s.cluster.cached_apps.clear();
        s.launch.mode = launch::LaunchMode::PerProcess;
        return s;
    }
    if (name == "policy-compare") {
        auto s = base("policy-compare");
        s.policy.per_user_core_limit = 8192;
        GeneratorParams g;
        g.arrival = ArrivalKind::Poisson;
        g.rate = 2.0;
        g.count = 200;
        g.users = 20;
        g.interactive_fraction = 0.6;
        g.shape = ShapeKind::Array;
        g.min_size = 1;
        g.max_size = 64;
        g.unit = 64;
        g.min_duration_s = 10.0;
        g.max_duration_s = 600.0;
        s.generator = g;
        return s;
    }
    std::string valid;
    for (const auto& n : builtin_names()) {
        valid += (valid.empty() ? "" : ", ") + n;
    }
    throw ConfigError(fmt::format("unknown builtin '{}'; available: {}", name, valid));
}

} // namespace ilaunch::workload
