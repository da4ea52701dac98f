#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/net/radio.hpp"

namespace slcm::net {

struct SpeedRange {
    double min{0.0};
    double max{0.0};
};

struct MobilityState {
    Point position;
    Point waypoint;
    double speed{0.0};
};

MobilityState initial_mobility(const Arena& arena, SpeedRange speeds, Rng& rng);

/// Random waypoint without pauses. Reaching a waypoint mid-step draws the
/// next waypoint and speed, and the remaining time continues on the new leg.
MobilityState step_mobility(MobilityState state, double dt, const Arena& arena, SpeedRange speeds, Rng& rng);

} // namespace slcm::net
