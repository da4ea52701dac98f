#pragma once

#include "slcm/net/medium.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace slcm::net {

class GriError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GriResult {
    NodeId initiator{0};
    std::vector<NodeId> roster; // sorted, initiator excluded
    std::vector<std::vector<TrailEntry>> returns; // trails as received by the initiator
    std::size_t packets_go{0};
    std::size_t packets_return{0};
    std::size_t packets_info{0};
    bool completed{true};
    bool finished{false};

    std::size_t broadcast_packets() const { return packets_go + packets_info; }
    std::size_t total_packets() const { return packets_go + packets_return + packets_info; }
};

struct GriConfig {
    Channel channel{Channel::ProofOfLife};
    std::size_t go_payload{0};
    double response_timer{0.0}; // <= 0 selects the default
    double jitter{0.0};         // <= 0 selects default_jitter
    bool flood_forwarding{false};
};

struct GriHandlers {
    /// Which nodes take part; others stay silent.
    std::function<bool(NodeId)> participates{};
    /// Called at the initiator once the timer expires. Returning a payload
    /// size starts the information phase.
    std::function<std::optional<std::size_t>(const GriResult&)> on_roster{};
    /// Called once per participating non-initiator receiving the information phase.
    std::function<void(NodeId)> on_info{};
    /// Called when the information phase has been handed to the medium.
    std::function<void(const GriResult&)> on_done{};
    /// Called for every node a go copy reaches, participating or not.
    std::function<void(NodeId)> on_overhear{};
};

/// Upper bound of the random wait before a go-phase forwarding decision.
double default_jitter(const Medium& medium);

/// 2 x per-hop latency x `hops`, the per-hop latency including the
/// forwarding jitter. Pass the node count when no better bound is known.
double default_response_timer(const Medium& medium, std::size_t hops);

/// Go / return / information broadcast. The go phase uses partial dominant
/// pruning: each sender names a greedy set of neighbours that covers the
/// 2-hop nodes its upstream cannot vouch for, and only named nodes forward.
/// Everyone else is a leaf and answers after a random jitter; a forwarder at
/// depth d aggregates its children's trails and answers at timer - d hops.
/// The information phase is relayed only by the internal nodes of the
/// resulting return tree. Throws GriError if the initiator does not
/// participate.
std::shared_ptr<const GriResult> gri_broadcast(Medium& medium, NodeId initiator, GriConfig config,
                                               GriHandlers handlers, Rng& rng);

struct FloodResult {
    std::size_t transmissions{0};
    std::vector<NodeId> reached; // sorted, initiator included
};

/// Every participant retransmits the first copy it hears, once.
std::shared_ptr<const FloodResult> flood_broadcast(Medium& medium, NodeId initiator, std::size_t payload,
                                                   std::function<bool(NodeId)> participates = nullptr);

} // namespace slcm::net
