#include "slcm/protocol/life_state.hpp"

#include "slcm/protocol/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace slcm::protocol {

namespace {

using L = LifeState;

constexpr std::pair<L, L> kEdges[] = {
    {L::NonLegitimate, L::Added},
    {L::Added, L::OnAuthenticated},
    {L::OnAuthenticated, L::Off},
    {L::OnAuthenticated, L::OutOfService},
    {L::OnAuthenticated, L::Deleted},
    {L::Off, L::OnToAuthenticate},
    {L::Off, L::Deleted},
    {L::OutOfService, L::OnToAuthenticate},
    {L::OutOfService, L::Off},
    {L::OutOfService, L::Deleted},
    {L::OnToAuthenticate, L::ReInserted},
    {L::OnToAuthenticate, L::Off},
    {L::OnToAuthenticate, L::Deleted},
    {L::ReInserted, L::OnAuthenticated},
    {L::Deleted, L::NonLegitimate},
};

} // namespace

std::string_view to_string(LifeState s)
{
    switch (s) {
    case L::OnAuthenticated: return "OnAuthenticated";
    case L::NonLegitimate: return "NonLegitimate";
    case L::OnToAuthenticate: return "OnToAuthenticate";
    case L::Off: return "Off";
    case L::ReInserted: return "ReInserted";
    case L::Deleted: return "Deleted";
    case L::OutOfService: return "OutOfService";
    case L::Added: return "Added";
    }
    return "unknown";
}

std::optional<LifeState> parse_life_state(std::string_view text)
{
    for (auto s : kAllLifeStates) {
        if (to_string(s) == text) {
            return s;
        }
    }
    return std::nullopt;
}

bool can_transition(LifeState from, LifeState to)
{
    return std::find(std::begin(kEdges), std::end(kEdges), std::pair{from, to}) != std::end(kEdges);
}

LifeState transition(LifeState from, LifeState to)
{
    if (!can_transition(from, to)) {
        throw ProtocolError(ProtocolErrc::IllegalTransition,
                            std::string(to_string(from)) + " -> " + std::string(to_string(to)));
    }
    return to;
}

LifeState normalize(LifeState s)
{
    return s == L::ReInserted || s == L::Added ? L::OnAuthenticated : s;
}

bool holds_vertex(LifeState s)
{
    return s != L::NonLegitimate && s != L::Deleted;
}

} // namespace slcm::protocol
