#pragma once

#include <ilaunch/core/sim_time.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ilaunch::sched {

enum class PolicyKind { AllBatch, BatchWithReservations, InteractiveWithLimits, AllImmediate };

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy(std::string_view text);

struct Policy {
    PolicyKind kind = PolicyKind::InteractiveWithLimits;
    /// Per-user slot limit; only meaningful for InteractiveWithLimits.
    std::int64_t per_user_core_limit = 0;

    friend bool operator==(const Policy&, const Policy&) = default;
};

struct SchedulerConfig {
    double period_s = 0.1;       // spacing of scheduling cycles
    int depth = 1000;            // queued jobs examined per cycle
    double t_sched_op_s = 0.001; // scheduler busy time per examined job or immediate attempt

    friend bool operator==(const SchedulerConfig&, const SchedulerConfig&) = default;
};

void validate(const SchedulerConfig& config);
void validate(const Policy& policy);

struct Reservation {
    std::string id;
    std::string user;
    int node_count = 1;
    double start_s = 0.0;
    double duration_s = 1.0;

    friend bool operator==(const Reservation&, const Reservation&) = default;
};

} // namespace ilaunch::sched
