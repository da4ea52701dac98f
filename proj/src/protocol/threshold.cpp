#include "slcm/protocol/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slcm::protocol {

ThresholdT ThresholdT::initial(double value, double epsilon, double floor)
{
    if (!(value > 0.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("threshold and epsilon must be positive");
    }
    if (floor < 0.0) {
        throw std::invalid_argument("negative threshold floor");
    }
    return ThresholdT{std::max(value, floor), epsilon, floor, {}};
}

ThresholdT update_threshold(ThresholdT th, double observed_offline)
{
    if (observed_offline < 0.0) {
        throw std::invalid_argument("negative offline duration");
    }
    th.offline_history.push_back(observed_offline);
    const auto& h = th.offline_history;
    const double n = static_cast<double>(h.size());
    const double mean = std::accumulate(h.begin(), h.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : h) {
        ss += (x - mean) * (x - mean);
    }
    th.current = std::max(th.floor, mean + std::sqrt(ss / n) + th.epsilon);
    return th;
}

} // namespace slcm::protocol
