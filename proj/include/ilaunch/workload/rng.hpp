#pragma once

#include <cstdint>
#include <random>

namespace ilaunch::workload {

/// Reproducible random source: the standard MT19937-64 engine (as defined by
/// the C++ standard and the original Matsumoto-Nishimura reference code),
/// with every derived draw computed here rather than through
/// implementation-defined std:: distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Top 53 bits scaled into [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// lo + floor(u * (hi - lo + 1)), in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// -ln(1 - u) / rate.
    double exponential(double rate);

    double uniform_real(double lo, double hi) { return lo + uniform() * (hi - lo); }

private:
    std::mt19937_64 engine_;
};

} // namespace ilaunch::workload
