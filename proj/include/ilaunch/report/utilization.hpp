#pragma once

#include <ilaunch/core/sim_time.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace ilaunch::report {

/// Step function of allocated slots over simulated time.
class UtilizationTrace {
public:
    explicit UtilizationTrace(std::int64_t total_slots = 0) : total_slots_(total_slots) {}

    /// Records the allocated total from time `t` on. Times must not decrease;
    /// several updates at one instant keep the last value.
    void record(core::SimTime t, std::int64_t allocated);

    std::int64_t total_slots() const { return total_slots_; }
    std::int64_t value_at(core::SimTime t) const;
    std::int64_t peak() const;
    const std::vector<std::pair<core::SimTime, std::int64_t>>& steps() const { return steps_; }

    /// Allocated slot-seconds over [from, to).
    double slot_seconds(core::SimTime from, core::SimTime to) const;

private:
    std::int64_t total_slots_;
    std::vector<std::pair<core::SimTime, std::int64_t>> steps_;
};

/// Allocated slot-seconds in [from, to) divided by total slots x window
/// length. An empty window throws ConfigError.
double utilization(const UtilizationTrace& trace, core::SimTime from, core::SimTime to);

} // namespace ilaunch::report
