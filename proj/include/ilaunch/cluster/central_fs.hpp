#pragma once

#include <ilaunch/core/sim_time.hpp>

#include <cstdint>

namespace ilaunch::cluster {

/// The shared central filesystem as a single FIFO server with aggregate rate
/// `mu` requests/second. A batch of n requests is served back to back; its
/// service time is n/mu rounded to the nearest microsecond.
class CentralFS {
public:
    explicit CentralFS(double mu);

    /// Enqueue `n_requests` at `t_enqueue`; returns the completion time of the
    /// last request. Enqueue times must be non-decreasing across calls.
    core::SimTime enqueue(std::int64_t n_requests, core::SimTime t_enqueue);

    core::SimTime service_time(std::int64_t n_requests) const;

    double mu() const { return mu_; }
    core::SimTime server_free_time() const { return server_free_; }
    core::SimTime busy_time() const { return busy_; }
    std::int64_t total_requests() const { return total_requests_; }
    std::int64_t batches() const { return batches_; }

private:
    double mu_;
    core::SimTime server_free_;
    core::SimTime last_enqueue_;
    core::SimTime last_completion_;
    core::SimTime busy_;
    std::int64_t total_requests_ = 0;
    std::int64_t batches_ = 0;
};

} // namespace ilaunch::cluster
