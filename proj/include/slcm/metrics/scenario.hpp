#pragma once

#include "slcm/metrics/config.hpp"
#include "slcm/metrics/summary.hpp"
#include "slcm/net/trace.hpp"

#include <cstdint>

namespace slcm::metrics {

struct ScenarioResult {
    net::Trace trace;
    RunSummary summary;
    std::uint64_t final_stage{0};     // stage held by the largest agreeing group
    std::size_t members{0};           // vertices of that group's graph
    std::size_t authenticated{0};     // powered devices in OnAuthenticated
    std::size_t divergent{0};         // authenticated devices outside the largest agreeing group
    double final_threshold{0.0};
    bool terminated{false};
};

/// Runs one seeded scenario: founders placed connected, random waypoint
/// mobility, proofs of life with pruning, and churn (insertions, departures,
/// power toggles answered by access control). Throws ConfigInvalid.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

} // namespace slcm::metrics
