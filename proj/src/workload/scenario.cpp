#include <ilaunch/workload/scenario.hpp>

#include <ilaunch/cluster/node.hpp>
#include <ilaunch/core/error.hpp>

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace ilaunch::workload {

using json = nlohmann::ordered_json;

namespace {

/// Reads one JSON object, remembering which keys were consumed so that
/// leftovers can be reported as unknown.
class Section {
public:
    Section(const json& node, std::string path, std::string_view source)
        : node_(node)
        , path_(std::move(path))
        , source_(source) {
        if (!node_.is_object()) {
            fail_here("expected an object");
        }
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    const json& raw(const std::string& key) {
        used_.insert(key);
        return node_.at(key);
    }

    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        throw ConfigError(fmt::format("{}: {}: {}", source_, key_path(key), msg));
    }

    [[noreturn]] void fail_here(const std::string& msg) const {
        throw ConfigError(fmt::format("{}: {}: {}", source_, path_.empty() ? "<root>" : path_, msg));
    }

    double number(const std::string& key, double fallback) {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = raw(key);
        if (!v.is_number()) {
            fail(key, "expected a number");
        }
        return v.get<double>();
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        if (!has(key)) {
            return fallback;
        }
        return as_integer(raw(key), key);
    }

    std::int64_t as_integer(const json& v, const std::string& key) const {
        if (v.is_number_unsigned()) {
            return static_cast<std::int64_t>(v.get<std::uint64_t>());
        }
        if (v.is_number_integer()) {
            return v.get<std::int64_t>();
        }
        if (v.is_number_float()) {
            const double d = v.get<double>();
            if (std::floor(d) == d && std::abs(d) < 9e15) {
                return static_cast<std::int64_t>(d);
            }
        }
        fail(key, "expected an integer");
    }

    int small_int(const std::string& key, int fallback) {
        const auto v = integer(key, fallback);
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            fail(key, "integer out of range");
        }
        return static_cast<int>(v);
    }

    std::string string(const std::string& key, const std::string& fallback) {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = raw(key);
        if (!v.is_string()) {
            fail(key, "expected a string");
        }
        return v.get<std::string>();
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) {
            return fallback;
        }
        const auto& v = raw(key);
        if (!v.is_boolean()) {
            fail(key, "expected true or false");
        }
        return v.get<bool>();
    }

    std::vector<double> numbers(const std::string& key) {
        const auto& v = raw(key);
        if (v.is_number()) {
            return {v.get<double>()};
        }
        if (!v.is_array()) {
            fail(key, "expected a number or an array of numbers");
        }
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) {
                fail(key, "expected only numbers");
            }
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<int> ints(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_array()) {
            fail(key, "expected an array of integers");
        }
        std::vector<int> out;
        for (const auto& e : v) {
            out.push_back(static_cast<int>(as_integer(e, key)));
        }
        return out;
    }

    std::vector<std::string> strings(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_array()) {
            fail(key, "expected an array of strings");
        }
        std::vector<std::string> out;
        for (const auto& e : v) {
            if (!e.is_string()) {
                fail(key, "expected only strings");
            }
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    Section child(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_object()) {
            fail(key, "expected an object");
        }
        return Section(v, key_path(key), source_);
    }

    std::vector<Section> children(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_array()) {
            fail(key, "expected an array of objects");
        }
        std::vector<Section> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.emplace_back(v[i], fmt::format("{}[{}]", key_path(key), i), source_);
        }
        return out;
    }

    void done() const {
        for (const auto& [key, value] : node_.items()) {
            if (!used_.contains(key)) {
                fail(key, "unknown key");
            }
        }
    }

private:
    const json& node_;
    std::string path_;
    std::string source_;
    std::set<std::string> used_;
};

cluster::AppImage parse_app(Section s, const std::vector<cluster::AppImage>& defaults) {
    const auto name = s.string("name", "");
    if (name.empty()) {
        s.fail("name", "app needs a name");
    }
    cluster::AppImage app{name};
    for (const auto& d : defaults) {
        if (d.name == name) {
            app = d;
        }
    }
    app.f_central = s.small_int("f_central", app.f_central);
    app.t_local_load_s = s.number("t_local_load_s", app.t_local_load_s);
    app.f_central_nocache = s.small_int("f_central_nocache", app.f_central_nocache);
    s.done();
    return app;
}

sched::JobShape parse_shape(Section s) {
    const auto kind = s.string("kind", "sync");
    sched::JobShape shape;
    if (kind == "sync") {
        shape = sched::SyncParallel{s.small_int("nodes", 1), s.small_int("procs_per_node", 1)};
    } else if (kind == "array") {
        shape = sched::JobArray{s.small_int("tasks", 1), s.small_int("slots_per_task", 1)};
    } else {
        s.fail("kind", fmt::format("unknown value '{}' (expected sync or array)", kind));
    }
    s.done();
    return shape;
}

JobSpec parse_job(Section s) {
    JobSpec j;
    j.user = s.string("user", j.user);
    j.app = s.string("app", j.app);
    if (s.has("shape")) {
        j.shape = parse_shape(s.child("shape"));
    }
    j.submit_s = s.number("submit_s", j.submit_s);
    if (s.has("priority")) {
        j.priority = s.integer("priority", 0);
    }
    if (s.has("reservation")) {
        j.reservation = s.string("reservation", "");
    }
    j.interactive = s.boolean("interactive", j.interactive);
    if (s.has("durations_s")) {
        j.durations_s = s.numbers("durations_s");
    }
    s.done();
    return j;
}

GeneratorParams parse_generator(Section s) {
    GeneratorParams g;
    if (s.has("count")) {
        g.count = s.small_int("count", 0);
    }
    if (s.has("until_s")) {
        g.until_s = s.number("until_s", 0.0);
    }
    if (s.has("arrival")) {
        auto a = s.child("arrival");
        const auto kind = a.string("kind", "poisson");
        if (kind == "poisson") {
            g.arrival = ArrivalKind::Poisson;
            g.rate = a.number("rate", g.rate);
        } else if (kind == "fixed") {
            g.arrival = ArrivalKind::Fixed;
            g.times_s = a.numbers("times_s");
        } else if (kind == "burst") {
            g.arrival = ArrivalKind::Burst;
            g.at_s = a.number("at_s", g.at_s);
        } else {
            a.fail("kind", fmt::format("unknown value '{}' (expected poisson, fixed or burst)", kind));
        }
        a.done();
    }
    g.users = s.small_int("users", g.users);
    g.interactive_fraction = s.number("interactive_fraction", g.interactive_fraction);
    g.app = s.string("app", g.app);
    if (s.has("shape")) {
        auto sh = s.child("shape");
        const auto kind = sh.string("kind", "array");
        if (kind == "array") {
            g.shape = ShapeKind::Array;
            g.min_size = sh.small_int("min_tasks", g.min_size);
            g.max_size = sh.small_int("max_tasks", g.max_size);
            g.unit = sh.small_int("slots_per_task", g.unit);
        } else if (kind == "sync") {
            g.shape = ShapeKind::Sync;
            g.min_size = sh.small_int("min_nodes", g.min_size);
            g.max_size = sh.small_int("max_nodes", g.max_size);
            g.unit = sh.small_int("procs_per_node", g.unit);
        } else {
            sh.fail("kind", fmt::format("unknown value '{}' (expected array or sync)", kind));
        }
        sh.done();
    }
    if (s.has("duration_s")) {
        auto d = s.child("duration_s");
        g.min_duration_s = d.number("min", g.min_duration_s);
        g.max_duration_s = d.number("max", g.max_duration_s);
        d.done();
    }
    s.done();
    return g;
}

json shape_json(const sched::JobShape& shape) {
    if (const auto* s = std::get_if<sched::SyncParallel>(&shape)) {
        return json{{"kind", "sync"}, {"nodes", s->n_nodes}, {"procs_per_node", s->procs_per_node}};
    }
    const auto& a = std::get<sched::JobArray>(shape);
    return json{{"kind", "array"}, {"tasks", a.n_tasks}, {"slots_per_task", a.slots_per_task}};
}

json generator_json(const GeneratorParams& g) {
    json out = json::object();
    if (g.count) {
        out["count"] = *g.count;
    }
    if (g.until_s) {
        out["until_s"] = *g.until_s;
    }
    switch (g.arrival) {
    case ArrivalKind::Poisson: out["arrival"] = json{{"kind", "poisson"}, {"rate", g.rate}}; break;
    case ArrivalKind::Fixed: out["arrival"] = json{{"kind", "fixed"}, {"times_s", g.times_s}}; break;
    case ArrivalKind::Burst: out["arrival"] = json{{"kind", "burst"}, {"at_s", g.at_s}}; break;
    }
    out["users"] = g.users;
    out["interactive_fraction"] = g.interactive_fraction;
    out["app"] = g.app;
    if (g.shape == ShapeKind::Array) {
        out["shape"] = json{{"kind", "array"}, {"min_tasks", g.min_size}, {"max_tasks", g.max_size},
                            {"slots_per_task", g.unit}};
    } else {
        out["shape"] = json{{"kind", "sync"}, {"min_nodes", g.min_size}, {"max_nodes", g.max_size},
                            {"procs_per_node", g.unit}};
    }
    out["duration_s"] = json{{"min", g.min_duration_s}, {"max", g.max_duration_s}};
    return out;
}

bool known_app(const Scenario& s, const std::string& name) {
    return std::any_of(s.apps.begin(), s.apps.end(), [&](const auto& a) { return a.name == name; });
}

} // namespace

std::vector<cluster::AppImage> default_apps() {
    return {
        {"octave", 3, 0.1, 1000},
        {"tensorflow", 2, 0.1, 1000},
    };
}

Scenario parse_scenario(std::string_view text, std::string_view source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("{}: parse error: {}", source, e.what()));
    }
    Section root(doc, "", source);
    Scenario sc;
    sc.name = root.string("name", "");
    if (sc.name.empty()) {
        root.fail("name", "scenario needs a non-empty name");
    }
    if (root.has("seed")) {
        const auto seed = root.integer("seed", 0);
        if (seed < 0) {
            root.fail("seed", "must be a non-negative integer");
        }
        sc.seed = static_cast<std::uint64_t>(seed);
    }
    if (root.has("horizon_s")) {
        sc.horizon_s = root.number("horizon_s", 0.0);
    }

    if (root.has("cluster")) {
        auto c = root.child("cluster");
        sc.cluster.nodes = c.small_int("nodes", sc.cluster.nodes);
        sc.cluster.node.cores = c.small_int("cores", sc.cluster.node.cores);
        sc.cluster.node.threads_per_core = c.small_int("threads_per_core", sc.cluster.node.threads_per_core);
        sc.cluster.node.oversub_max = c.small_int("oversub_max", sc.cluster.node.oversub_max);
        if (c.has("cached_apps")) {
            sc.cluster.cached_apps = c.strings("cached_apps");
        }
        c.done();
    }

    sc.apps = default_apps();
    if (root.has("apps")) {
        const auto defaults = default_apps();
        for (auto& s : root.children("apps")) {
            auto app = parse_app(std::move(s), defaults);
            auto it = std::find_if(sc.apps.begin(), sc.apps.end(), [&](const auto& a) { return a.name == app.name; });
            if (it != sc.apps.end()) {
                *it = std::move(app);
            } else {
                sc.apps.push_back(std::move(app));
            }
        }
    }

    if (root.has("fs")) {
        auto f = root.child("fs");
        sc.fs_mu = f.number("mu", sc.fs_mu);
        f.done();
    }

    if (root.has("policy")) {
        const auto p = root.string("policy", "");
        const auto kind = sched::parse_policy(p);
        if (!kind) {
            root.fail("policy", fmt::format("unknown value '{}' (expected all_batch, batch_with_reservations, "
                                            "interactive_with_limits or all_immediate)",
                                            p));
        }
        sc.policy.kind = *kind;
    }
    sc.policy.per_user_core_limit = cluster::node_capacity(sc.cluster.node) * sc.cluster.nodes;
    if (root.has("limits")) {
        auto l = root.child("limits");
        sc.policy.per_user_core_limit = l.integer("per_user_cores", sc.policy.per_user_core_limit);
        l.done();
    }

    if (root.has("scheduler")) {
        auto s = root.child("scheduler");
        sc.scheduler.period_s = s.number("period_s", sc.scheduler.period_s);
        sc.scheduler.depth = s.small_int("depth", sc.scheduler.depth);
        sc.scheduler.t_sched_op_s = s.number("t_sched_op_s", sc.scheduler.t_sched_op_s);
        s.done();
    }

    if (root.has("launch")) {
        auto l = root.child("launch");
        if (l.has("mode")) {
            const auto m = l.string("mode", "");
            const auto mode = launch::parse_launch_mode(m);
            if (!mode) {
                l.fail("mode", fmt::format("unknown value '{}' (expected two_tier, ssh_tree or per_process)", m));
            }
            sc.launch.mode = *mode;
        }
        if (l.has("timing")) {
            auto t = l.child("timing");
            auto& tm = sc.launch.timing;
            tm.fanout = t.small_int("fanout", tm.fanout);
            tm.t_hop_s = t.number("t_hop_s", tm.t_hop_s);
            tm.t_launcher_start_s = t.number("t_launcher_start_s", tm.t_launcher_start_s);
            tm.t_fork_s = t.number("t_fork_s", tm.t_fork_s);
            tm.ssh_fanout = t.small_int("ssh_fanout", tm.ssh_fanout);
            tm.t_ssh_hop_s = t.number("t_ssh_hop_s", tm.t_ssh_hop_s);
            tm.dispatch_rate = t.number("dispatch_rate", tm.dispatch_rate);
            t.done();
        }
        l.done();
    }

    if (root.has("jobs")) {
        const auto& j = doc.at("jobs");
        if (j.is_array()) {
            for (auto& s : root.children("jobs")) {
                sc.jobs.push_back(parse_job(std::move(s)));
            }
        } else {
            auto g = root.child("jobs");
            sc.generator = parse_generator(g.child("generate"));
            g.done();
        }
    }

    if (root.has("reservations")) {
        for (auto& s : root.children("reservations")) {
            sched::Reservation r;
            r.id = s.string("id", "");
            r.user = s.string("user", "");
            r.node_count = s.small_int("nodes", r.node_count);
            r.start_s = s.number("start_s", r.start_s);
            r.duration_s = s.number("duration_s", r.duration_s);
            s.done();
            sc.reservations.push_back(std::move(r));
        }
    }

    if (root.has("sweep")) {
        auto s = root.child("sweep");
        SweepGrid g;
        g.nnode_list = s.ints("nodes");
        g.nproc_list = s.ints("procs");
        g.app = s.string("app", g.app);
        g.repetitions = s.small_int("repetitions", g.repetitions);
        s.done();
        sc.sweep = std::move(g);
    }
    root.done();

    try {
        validate(sc);
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", source, e.what()));
    }
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError(fmt::format("cannot open scenario file '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path.string());
}

std::string to_text(const Scenario& sc) {
    json doc;
    doc["name"] = sc.name;
    doc["seed"] = sc.seed;
    if (sc.horizon_s) {
        doc["horizon_s"] = *sc.horizon_s;
    }
    doc["cluster"] = json{{"nodes", sc.cluster.nodes},
                          {"cores", sc.cluster.node.cores},
                          {"threads_per_core", sc.cluster.node.threads_per_core},
                          {"oversub_max", sc.cluster.node.oversub_max},
                          {"cached_apps", sc.cluster.cached_apps}};
    json apps = json::array();
    for (const auto& a : sc.apps) {
        apps.push_back(json{{"name", a.name},
                            {"f_central", a.f_central},
                            {"t_local_load_s", a.t_local_load_s},
                            {"f_central_nocache", a.f_central_nocache}});
    }
    doc["apps"] = std::move(apps);
    doc["fs"] = json{{"mu", sc.fs_mu}};
    doc["policy"] = std::string(sched::to_string(sc.policy.kind));
    doc["limits"] = json{{"per_user_cores", sc.policy.per_user_core_limit}};
    doc["scheduler"] = json{{"period_s", sc.scheduler.period_s},
                            {"depth", sc.scheduler.depth},
                            {"t_sched_op_s", sc.scheduler.t_sched_op_s}};
    const auto& t = sc.launch.timing;
    doc["launch"] = json{{"mode", std::string(launch::to_string(sc.launch.mode))},
                         {"timing", json{{"fanout", t.fanout},
                                         {"t_hop_s", t.t_hop_s},
                                         {"t_launcher_start_s", t.t_launcher_start_s},
                                         {"t_fork_s", t.t_fork_s},
                                         {"ssh_fanout", t.ssh_fanout},
                                         {"t_ssh_hop_s", t.t_ssh_hop_s},
                                         {"dispatch_rate", t.dispatch_rate}}}};
    if (sc.generator) {
        doc["jobs"] = json{{"generate", generator_json(*sc.generator)}};
    } else {
        json jobs = json::array();
        for (const auto& j : sc.jobs) {
            json o{{"user", j.user}, {"app", j.app}, {"shape", shape_json(j.shape)}, {"submit_s", j.submit_s}};
            if (j.priority) {
                o["priority"] = *j.priority;
            }
            if (j.reservation) {
                o["reservation"] = *j.reservation;
            }
            o["interactive"] = j.interactive;
            o["durations_s"] = j.durations_s;
            jobs.push_back(std::move(o));
        }
        doc["jobs"] = std::move(jobs);
    }
    if (!sc.reservations.empty()) {
        json res = json::array();
        for (const auto& r : sc.reservations) {
            res.push_back(json{{"id", r.id},
                               {"user", r.user},
                               {"nodes", r.node_count},
                               {"start_s", r.start_s},
                               {"duration_s", r.duration_s}});
        }
        doc["reservations"] = std::move(res);
    }
    if (sc.sweep) {
        doc["sweep"] = json{{"nodes", sc.sweep->nnode_list},
                            {"procs", sc.sweep->nproc_list},
                            {"app", sc.sweep->app},
                            {"repetitions", sc.sweep->repetitions}};
    }
    return doc.dump(2) + "\n";
}

void validate(const GeneratorParams& g) {
    switch (g.arrival) {
    case ArrivalKind::Poisson:
        if (!(g.rate > 0.0) || !std::isfinite(g.rate)) {
            throw ConfigError(fmt::format("jobs.generate.arrival.rate must be > 0, got {}", g.rate));
        }
        if (!g.count && !g.until_s) {
            throw ConfigError("jobs.generate: poisson arrivals need count or until_s");
        }
        break;
    case ArrivalKind::Fixed:
        if (g.times_s.empty()) {
            throw ConfigError("jobs.generate.arrival.times_s must not be empty");
        }
        for (double t : g.times_s) {
            if (!(t >= 0.0)) {
                throw ConfigError("jobs.generate.arrival.times_s must be >= 0");
            }
        }
        break;
    case ArrivalKind::Burst:
        if (!g.count) {
            throw ConfigError("jobs.generate: burst arrivals need count");
        }
        if (!(g.at_s >= 0.0)) {
            throw ConfigError("jobs.generate.arrival.at_s must be >= 0");
        }
        break;
    }
    if (g.count && *g.count < 1) {
        throw ConfigError("jobs.generate.count must be >= 1");
    }
    if (g.until_s && !(*g.until_s > 0.0)) {
        throw ConfigError("jobs.generate.until_s must be > 0");
    }
    if (g.users < 1) {
        throw ConfigError("jobs.generate.users must be >= 1");
    }
    if (!(g.interactive_fraction >= 0.0 && g.interactive_fraction <= 1.0)) {
        throw ConfigError("jobs.generate.interactive_fraction must be in [0, 1]");
    }
    if (g.min_size < 1 || g.max_size < g.min_size || g.unit < 1) {
        throw ConfigError("jobs.generate.shape needs 1 <= min <= max and a unit >= 1");
    }
    if (!(g.min_duration_s >= 0.0) || g.max_duration_s < g.min_duration_s) {
        throw ConfigError("jobs.generate.duration_s needs 0 <= min <= max");
    }
}

void validate(const Scenario& sc) {
    if (sc.name.empty()) {
        throw ConfigError("name: scenario needs a non-empty name");
    }
    if (sc.horizon_s && !(*sc.horizon_s >= 0.0)) {
        throw ConfigError("horizon_s: must be >= 0");
    }
    cluster::validate(sc.cluster.node);
    if (sc.cluster.nodes < 1) {
        throw ConfigError("cluster.nodes: must be >= 1");
    }
    std::set<std::string> names;
    for (const auto& a : sc.apps) {
        cluster::validate(a);
        if (!names.insert(a.name).second) {
            throw ConfigError(fmt::format("apps: '{}' defined twice", a.name));
        }
    }
    for (const auto& c : sc.cluster.cached_apps) {
        if (!known_app(sc, c)) {
            throw ConfigError(fmt::format("cluster.cached_apps: unknown app '{}'", c));
        }
    }
    if (!(sc.fs_mu > 0.0) || !std::isfinite(sc.fs_mu)) {
        throw ConfigError(fmt::format("fs.mu: must be > 0, got {}", sc.fs_mu));
    }
    sched::validate(sc.policy);
    sched::validate(sc.scheduler);
    launch::validate(sc.launch.timing);

    std::set<std::string> res_ids;
    for (const auto& r : sc.reservations) {
        if (sc.policy.kind != sched::PolicyKind::BatchWithReservations) {
            throw ConfigError("reservations: require policy batch_with_reservations");
        }
        if (r.id.empty() || !res_ids.insert(r.id).second) {
            throw ConfigError(fmt::format("reservations: id '{}' is empty or duplicated", r.id));
        }
        if (r.node_count < 1 || !(r.duration_s > 0.0) || !(r.start_s >= 0.0)) {
            throw ConfigError(fmt::format("reservations: '{}' needs nodes >= 1, duration_s > 0, start_s >= 0", r.id));
        }
    }

    for (std::size_t i = 0; i < sc.jobs.size(); ++i) {
        const auto& j = sc.jobs[i];
        const auto where = fmt::format("jobs[{}]", i);
        if (!known_app(sc, j.app)) {
            throw ConfigError(fmt::format("{}.app: unknown app '{}'", where, j.app));
        }
        const bool counts_ok = std::visit(
            [](const auto& s) {
                if constexpr (std::is_same_v<std::decay_t<decltype(s)>, sched::SyncParallel>) {
                    return s.n_nodes >= 1 && s.procs_per_node >= 1;
                } else {
                    return s.n_tasks >= 1 && s.slots_per_task >= 1;
                }
            },
            j.shape);
        if (!counts_ok) {
            throw ConfigError(fmt::format("{}.shape: counts must be >= 1", where));
        }
        if (!(j.submit_s >= 0.0)) {
            throw ConfigError(fmt::format("{}.submit_s: must be >= 0", where));
        }
        const auto n = sched::task_count(j.shape);
        if (j.durations_s.empty() ||
            (j.durations_s.size() != 1 && static_cast<std::int64_t>(j.durations_s.size()) != n)) {
            throw ConfigError(fmt::format("{}.durations_s: need one value or one per task ({})", where, n));
        }
        for (double d : j.durations_s) {
            if (!(d >= 0.0)) {
                throw ConfigError(fmt::format("{}.durations_s: must be >= 0", where));
            }
        }
        if (j.reservation && !res_ids.contains(*j.reservation)) {
            throw ConfigError(fmt::format("{}.reservation: unknown reservation '{}'", where, *j.reservation));
        }
    }
    if (sc.generator) {
        validate(*sc.generator);
        if (!known_app(sc, sc.generator->app)) {
            throw ConfigError(fmt::format("jobs.generate.app: unknown app '{}'", sc.generator->app));
        }
    }
    if (sc.sweep) {
        const auto& g = *sc.sweep;
        if (g.nnode_list.empty() || g.nproc_list.empty()) {
            throw ConfigError("sweep: nodes and procs must be non-empty");
        }
        for (int v : g.nnode_list) {
            if (v < 1) {
                throw ConfigError("sweep.nodes: values must be >= 1");
            }
        }
        for (int v : g.nproc_list) {
            if (v < 1) {
                throw ConfigError("sweep.procs: values must be >= 1");
            }
        }
        if (g.repetitions < 1) {
            throw ConfigError("sweep.repetitions: must be >= 1");
        }
        if (!known_app(sc, g.app)) {
            throw ConfigError(fmt::format("sweep.app: unknown app '{}'", g.app));
        }
    }
}

} // namespace ilaunch::workload
