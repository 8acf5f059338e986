#include <ilaunch/cluster/central_fs.hpp>

#include <ilaunch/core/error.hpp>

#include <cmath>
#include <fmt/format.h>

namespace ilaunch::cluster {

using core::SimTime;

CentralFS::CentralFS(double mu) : mu_(mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw ConfigError(fmt::format("fs.mu must be a positive request rate, got {}", mu));
    }
}

SimTime CentralFS::service_time(std::int64_t n_requests) const {
    return SimTime::from_us(static_cast<std::int64_t>(std::llround(static_cast<double>(n_requests) * 1e6 / mu_)));
}

SimTime CentralFS::enqueue(std::int64_t n_requests, SimTime t_enqueue) {
    if (n_requests < 0) {
        throw InvariantViolation(fmt::format("negative FS request count {}", n_requests));
    }
    if (t_enqueue < last_enqueue_) {
        throw InvariantViolation(fmt::format("FS enqueue out of order: {} after {}", t_enqueue.str(),
                                             last_enqueue_.str()));
    }
    last_enqueue_ = t_enqueue;
    if (n_requests == 0) {
        return t_enqueue;
    }
    const SimTime service = service_time(n_requests);
    const SimTime completion = max(t_enqueue, server_free_) + service;
    if (completion < last_completion_) {
        throw InvariantViolation("FS completions went backwards");
    }
    server_free_ = completion;
    last_completion_ = completion;
    busy_ += service;
    total_requests_ += n_requests;
    ++batches_;
    return completion;
}

} // namespace ilaunch::cluster
