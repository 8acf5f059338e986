#include <ilaunch/core/sim_time.hpp>

#include <ilaunch/core/error.hpp>

#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace ilaunch::core {

SimTime SimTime::from_us(std::int64_t us) {
    if (us < 0) {
        throw InvariantViolation(fmt::format("negative simulated time: {} us", us));
    }
    return SimTime{us};
}

SimTime SimTime::from_seconds(double seconds) {
    if (!std::isfinite(seconds) || seconds < 0.0) {
        throw ConfigError(fmt::format("time must be a finite non-negative number of seconds, got {}", seconds));
    }
    const double us = std::round(seconds * 1e6);
    if (us > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 4)) {
        throw ConfigError(fmt::format("time {} s is out of range", seconds));
    }
    return SimTime{static_cast<std::int64_t>(us)};
}

std::string SimTime::str() const {
    return fmt::format("{}.{:06d}", us_ / 1'000'000, us_ % 1'000'000);
}

SimTime operator+(SimTime a, SimTime b) { return SimTime{a.us_ + b.us_}; }

SimTime operator-(SimTime a, SimTime b) { return SimTime::from_us(a.us_ - b.us_); }

SimTime operator*(SimTime a, std::int64_t k) { return SimTime::from_us(a.us_ * k); }

SimTime& SimTime::operator+=(SimTime other) {
    us_ += other.us_;
    return *this;
}

} // namespace ilaunch::core
