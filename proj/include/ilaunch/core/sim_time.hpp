#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ilaunch::core {

/// Simulated time, stored as an integer count of microseconds.
///
/// Used both for instants and for (non-negative) intervals. Arithmetic is
/// exact; conversion from seconds rounds to the nearest microsecond.
class SimTime {
public:
    constexpr SimTime() = default;

    static SimTime from_us(std::int64_t us);
    static SimTime from_seconds(double seconds);
    static constexpr SimTime zero() { return SimTime{}; }

    constexpr std::int64_t us() const { return us_; }
    constexpr double seconds() const { return static_cast<double>(us_) / 1e6; }

    /// Fixed six fractional digits, e.g. "0.162150".
    std::string str() const;

    friend constexpr auto operator<=>(SimTime, SimTime) = default;

    friend SimTime operator+(SimTime a, SimTime b);
    /// Throws InvariantViolation if the result would be negative.
    friend SimTime operator-(SimTime a, SimTime b);
    friend SimTime operator*(SimTime a, std::int64_t k);
    friend SimTime operator*(std::int64_t k, SimTime a) { return a * k; }
    SimTime& operator+=(SimTime other);

private:
    constexpr explicit SimTime(std::int64_t us) : us_(us) {}
    std::int64_t us_ = 0;
};

constexpr SimTime max(SimTime a, SimTime b) { return a < b ? b : a; }

} // namespace ilaunch::core
