#pragma once

#include <ilaunch/cluster/node.hpp>
#include <ilaunch/launch/timing_model.hpp>
#include <ilaunch/sched/job.hpp>
#include <ilaunch/sched/policy.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ilaunch::workload {

struct ClusterConfig {
    cluster::NodeSpec node;
    int nodes = 648;
    /// Apps whose installations are copied onto every node's local disk.
    std::vector<std::string> cached_apps{"octave", "tensorflow"};

    friend bool operator==(const ClusterConfig&, const ClusterConfig&) = default;
};

struct LaunchConfig {
    launch::LaunchMode mode = launch::LaunchMode::TwoTier;
    launch::TimingModel timing;

    friend bool operator==(const LaunchConfig&, const LaunchConfig&) = default;
};

struct JobSpec {
    std::string user = "user00";
    std::string app = "octave";
    sched::JobShape shape = sched::SyncParallel{1, 1};
    double submit_s = 0.0;
    std::optional<std::int64_t> priority;
    std::optional<std::string> reservation;
    bool interactive = true;
    /// One value per task, or a single value shared by every task.
    std::vector<double> durations_s{0.0};

    friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

enum class ArrivalKind { Poisson, Fixed, Burst };
enum class ShapeKind { Array, Sync };

struct GeneratorParams {
    ArrivalKind arrival = ArrivalKind::Poisson;
    double rate = 2.0;                 // Poisson jobs/s
    std::vector<double> times_s;       // Fixed
    double at_s = 0.0;                 // Burst
    std::optional<int> count;
    std::optional<double> until_s;
    int users = 20;
    double interactive_fraction = 0.6;
    std::string app = "octave";
    ShapeKind shape = ShapeKind::Array;
    int min_size = 1;    // tasks (array) or nodes (sync)
    int max_size = 64;
    int unit = 64;       // slots per task (array) or processes per node (sync)
    double min_duration_s = 10.0;
    double max_duration_s = 600.0;

    friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

struct SweepGrid {
    std::vector<int> nnode_list;
    std::vector<int> nproc_list;
    std::string app = "octave";
    int repetitions = 1;

    friend bool operator==(const SweepGrid&, const SweepGrid&) = default;
};

struct Scenario {
    std::string name;
    std::uint64_t seed = 42;
    std::optional<double> horizon_s;
    ClusterConfig cluster;
    std::vector<cluster::AppImage> apps;
    double fs_mu = 20000.0;
    sched::Policy policy;
    sched::SchedulerConfig scheduler;
    LaunchConfig launch;
    std::vector<JobSpec> jobs;
    std::optional<GeneratorParams> generator;
    std::vector<sched::Reservation> reservations;
    std::optional<SweepGrid> sweep;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

std::vector<cluster::AppImage> default_apps();

/// Parses a scenario document, fills every default and validates it.
/// Errors are ConfigError with the offending key path in the message.
Scenario parse_scenario(std::string_view text, std::string_view source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Fully resolved document; parse_scenario(to_text(s)) == s.
std::string to_text(const Scenario& scenario);

/// Throws ConfigError on broken cross-references or invariants.
void validate(const Scenario& scenario);

/// Deterministic in (params, seed). Draw order is documented in docs/scenario-format.md.
std::vector<JobSpec> generate_jobs(const GeneratorParams& params, std::uint64_t seed);
void validate(const GeneratorParams& params);

/// Explicit jobs followed by generated ones.
std::vector<JobSpec> resolve_jobs(const Scenario& scenario);

} // namespace ilaunch::workload
