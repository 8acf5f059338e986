#include <ilaunch/sched/policy.hpp>

#include <ilaunch/core/error.hpp>

#include <cmath>
#include <fmt/format.h>

namespace ilaunch::sched {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
    case PolicyKind::AllBatch: return "all_batch";
    case PolicyKind::BatchWithReservations: return "batch_with_reservations";
    case PolicyKind::InteractiveWithLimits: return "interactive_with_limits";
    case PolicyKind::AllImmediate: return "all_immediate";
    }
    return "unknown";
}

std::optional<PolicyKind> parse_policy(std::string_view text) {
    for (auto k : {PolicyKind::AllBatch, PolicyKind::BatchWithReservations, PolicyKind::InteractiveWithLimits,
                   PolicyKind::AllImmediate}) {
        if (text == to_string(k)) {
            return k;
        }
    }
    return std::nullopt;
}

void validate(const SchedulerConfig& c) {
    if (!(c.period_s > 0.0) || !std::isfinite(c.period_s)) {
        throw ConfigError(fmt::format("scheduler.period_s must be > 0, got {}", c.period_s));
    }
    if (core::SimTime::from_seconds(c.period_s) == core::SimTime::zero()) {
        throw ConfigError("scheduler.period_s is below the 1 us time resolution");
    }
    if (c.depth < 1) {
        throw ConfigError(fmt::format("scheduler.depth must be >= 1, got {}", c.depth));
    }
    if (!(c.t_sched_op_s >= 0.0) || !std::isfinite(c.t_sched_op_s)) {
        throw ConfigError(fmt::format("scheduler.t_sched_op_s must be >= 0, got {}", c.t_sched_op_s));
    }
}

void validate(const Policy& p) {
    if (p.kind == PolicyKind::InteractiveWithLimits && p.per_user_core_limit < 1) {
        throw ConfigError(fmt::format("limits.per_user_cores must be >= 1, got {}", p.per_user_core_limit));
    }
}

} // namespace ilaunch::sched
