#include "slcm/net/mobility.hpp"

#include <algorithm>
#include <stdexcept>

namespace slcm::net {

namespace {

Point random_point(const Arena& arena, Rng& rng)
{
    return {uniform_real(rng, 0.0, arena.width), uniform_real(rng, 0.0, arena.height)};
}

Point clamp(Point p, const Arena& arena)
{
    return {std::clamp(p.x, 0.0, arena.width), std::clamp(p.y, 0.0, arena.height)};
}

} // namespace

MobilityState initial_mobility(const Arena& arena, SpeedRange speeds, Rng& rng)
{
    MobilityState s;
    s.position = random_point(arena, rng);
    s.waypoint = random_point(arena, rng);
    s.speed = uniform_real(rng, speeds.min, speeds.max);
    return s;
}

MobilityState step_mobility(MobilityState state, double dt, const Arena& arena, SpeedRange speeds, Rng& rng)
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("mobility step must be positive");
    }
    // Bound the number of legs so a degenerate arena cannot spin forever.
    constexpr int kMaxLegs = 1000;
    double remaining = dt;
    for (int leg = 0; leg < kMaxLegs && remaining > 0.0 && state.speed > 0.0; ++leg) {
        const double d = distance(state.position, state.waypoint);
        const double reach = state.speed * remaining;
        if (reach < d) {
            const double f = reach / d;
            state.position = clamp({state.position.x + (state.waypoint.x - state.position.x) * f,
                                    state.position.y + (state.waypoint.y - state.position.y) * f},
                                   arena);
            return state;
        }
        remaining -= d / state.speed;
        state.position = state.waypoint;
        state.waypoint = random_point(arena, rng);
        state.speed = uniform_real(rng, speeds.min, speeds.max);
    }
    return state;
}

} // namespace slcm::net
