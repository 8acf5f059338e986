#include <ilaunch/workload/rng.hpp>
#include <ilaunch/workload/scenario.hpp>

#include <cmath>
#include <fmt/format.h>

namespace ilaunch::workload {

namespace {

double to_us_grid(double seconds) { return std::round(seconds * 1e6) / 1e6; }

} // namespace

std::vector<JobSpec> generate_jobs(const GeneratorParams& g, std::uint64_t seed) {
    validate(g);
    Rng rng(seed);
    std::vector<JobSpec> jobs;
    double t = 0.0;
    const std::size_t limit = g.arrival == ArrivalKind::Fixed
                                  ? g.times_s.size()
                                  : (g.count ? static_cast<std::size_t>(*g.count) : static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < limit; ++i) {
        // Draw order per job: arrival, user, interactive flag, size, durations.
        double submit = 0.0;
        switch (g.arrival) {
        case ArrivalKind::Poisson:
            t += rng.exponential(g.rate);
            submit = t;
            break;
        case ArrivalKind::Fixed: submit = g.times_s[i]; break;
        case ArrivalKind::Burst: submit = g.at_s; break;
        }
        if (g.until_s && submit > *g.until_s) {
            break;
        }
        JobSpec j;
        j.submit_s = to_us_grid(submit);
        j.user = fmt::format("user{:02d}", rng.uniform_int(0, g.users - 1));
        j.interactive = rng.uniform() < g.interactive_fraction;
        j.app = g.app;
        const auto size = static_cast<int>(rng.uniform_int(g.min_size, g.max_size));
        j.durations_s.clear();
        if (g.shape == ShapeKind::Array) {
            j.shape = sched::JobArray{size, g.unit};
            for (int k = 0; k < size; ++k) {
                j.durations_s.push_back(to_us_grid(rng.uniform_real(g.min_duration_s, g.max_duration_s)));
            }
        } else {
            j.shape = sched::SyncParallel{size, g.unit};
            j.durations_s.push_back(to_us_grid(rng.uniform_real(g.min_duration_s, g.max_duration_s)));
        }
        jobs.push_back(std::move(j));
    }
    return jobs;
}

std::vector<JobSpec> resolve_jobs(const Scenario& scenario) {
    auto jobs = scenario.jobs;
    if (scenario.generator) {
        auto generated = generate_jobs(*scenario.generator, scenario.seed);
        jobs.insert(jobs.end(), std::make_move_iterator(generated.begin()), std::make_move_iterator(generated.end()));
    }
    return jobs;
}

} // namespace ilaunch::workload
