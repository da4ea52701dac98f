#pragma once

#include <vector>

namespace slcm::protocol {

/// Adaptive bound T on offline time; also the proof-of-life period.
struct ThresholdT {
    double current{0.0};
    double epsilon{1.0};
    double floor{0.0}; // lower clamp on current
    std::vector<double> offline_history;

    static ThresholdT initial(double value, double epsilon, double floor = 0.0);
};

/// Appends the observation and sets current = max(floor, mean + population stddev + epsilon).
ThresholdT update_threshold(ThresholdT th, double observed_offline);

} // namespace slcm::protocol
