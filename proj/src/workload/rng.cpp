#include <ilaunch/workload/rng.hpp>

#include <algorithm>
#include <cmath>

namespace ilaunch::workload {

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<double>(hi - lo + 1);
    const auto k = static_cast<std::int64_t>(std::floor(uniform() * span));
    return std::min(hi, lo + k);
}

double Rng::exponential(double rate) { return -std::log(1.0 - uniform()) / rate; }

} // namespace ilaunch::workload
