#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace slcm::protocol {

enum class LifeState : std::uint8_t {
    OnAuthenticated,
    NonLegitimate,
    OnToAuthenticate,
    Off,
    ReInserted,
    Deleted,
    OutOfService,
    Added,
};

inline constexpr std::array kAllLifeStates{
    LifeState::OnAuthenticated, LifeState::NonLegitimate, LifeState::OnToAuthenticate, LifeState::Off,
    LifeState::ReInserted,      LifeState::Deleted,       LifeState::OutOfService,     LifeState::Added,
};

std::string_view to_string(LifeState s);
std::optional<LifeState> parse_life_state(std::string_view text);

bool can_transition(LifeState from, LifeState to);

/// Returns `to`, or throws `IllegalTransition`.
LifeState transition(LifeState from, LifeState to);

/// Entry-transient states settle into OnAuthenticated on the next tick.
LifeState normalize(LifeState s);

/// States whose holder still owns a vertex of G_t.
bool holds_vertex(LifeState s);

} // namespace slcm::protocol
