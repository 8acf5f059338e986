#include <ilaunch/report/utilization.hpp>

#include <ilaunch/core/error.hpp>

#include <algorithm>
#include <fmt/format.h>

namespace ilaunch::report {

using core::SimTime;

void UtilizationTrace::record(SimTime t, std::int64_t allocated) {
    if (allocated < 0 || allocated > total_slots_) {
        throw InvariantViolation(fmt::format("allocated slots {} outside [0, {}]", allocated, total_slots_));
    }
    if (!steps_.empty() && t < steps_.back().first) {
        throw InvariantViolation("utilization trace went back in time");
    }
    if (!steps_.empty() && steps_.back().first == t) {
        steps_.back().second = allocated;
        return;
    }
    steps_.emplace_back(t, allocated);
}

std::int64_t UtilizationTrace::value_at(SimTime t) const {
    auto it = std::upper_bound(steps_.begin(), steps_.end(), t,
                               [](SimTime v, const auto& step) { return v < step.first; });
    return it == steps_.begin() ? 0 : std::prev(it)->second;
}

std::int64_t UtilizationTrace::peak() const {
    std::int64_t p = 0;
    for (const auto& [t, v] : steps_) {
        p = std::max(p, v);
    }
    return p;
}

double UtilizationTrace::slot_seconds(SimTime from, SimTime to) const {
    double sum = 0.0;
    SimTime cursor = from;
    std::int64_t level = value_at(from);
    for (const auto& [t, v] : steps_) {
        if (t <= from) {
            continue;
        }
        if (t >= to) {
            break;
        }
        sum += static_cast<double>(level) * (t - cursor).seconds();
        cursor = t;
        level = v;
    }
    sum += static_cast<double>(level) * (to - cursor).seconds();
    return sum;
}

double utilization(const UtilizationTrace& trace, SimTime from, SimTime to) {
    if (to <= from) {
        throw ConfigError(fmt::format("empty utilization window [{}, {})", from.str(), to.str()));
    }
    if (trace.total_slots() <= 0) {
        throw ConfigError("utilization of a trace with no slots");
    }
    return trace.slot_seconds(from, to) / (static_cast<double>(trace.total_slots()) * (to - from).seconds());
}

} // namespace ilaunch::report
