#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/net/engine.hpp"
#include "slcm/net/topology.hpp"
#include "slcm/net/trace.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace slcm::net {

inline constexpr std::size_t kHeaderBytes = 32;
inline constexpr double kDefaultHopLatency = 0.010;

struct TrailEntry {
    NodeId id{0};
    std::uint32_t children{0};

    bool operator==(const TrailEntry&) const = default;
};

struct Packet {
    std::uint64_t id{0};
    PacketKind kind{PacketKind::None};
    Channel channel{Channel::None};
    NodeId origin{0};
    std::size_t payload{0};
    double created_at{0.0};
    std::uint32_t hops{0};
    std::vector<TrailEntry> trail;
    std::vector<NodeId> relays; // nodes asked to retransmit

    std::size_t size() const { return kHeaderBytes + payload; }
};

struct MediumConfig {
    double hop_latency{kDefaultHopLatency};
    double processing_delay{0.001};
    double loss_probability{0.0};
};

struct CopyCounters {
    std::uint64_t created{0};
    std::uint64_t delivered{0};
    std::uint64_t dropped{0};

    std::uint64_t in_flight() const { return created - delivered - dropped; }
};

/// Shared radio channel over the current topology. Each transmission yields
/// one copy per in-range receiver; each copy is delivered after one hop
/// delay or dropped (Bernoulli loss, or the unicast target out of range).
class Medium {
public:
    using Receive = std::function<void(NodeId receiver, NodeId sender, const Packet&)>;
    using Lost = std::function<void(NodeId receiver, NodeId sender, const Packet&)>;

    Medium(Engine& engine, MediumConfig config, Rng& rng);

    Engine& engine() noexcept { return engine_; }
    const MediumConfig& config() const noexcept { return config_; }
    double hop_delay() const noexcept { return config_.hop_latency + config_.processing_delay; }

    void set_topology(Topology t) { topology_ = std::move(t); }
    const Topology& topology() const noexcept { return topology_; }

    /// Fresh packet id stamped with the current time.
    Packet make_packet(PacketKind kind, Channel channel, NodeId origin, std::size_t payload);

    /// `relay` marks a retransmission of an existing packet (traced as fwd).
    void broadcast(NodeId sender, Packet packet, bool relay, Receive on_receive);
    void unicast(NodeId sender, NodeId receiver, Packet packet, bool relay, Receive on_receive,
                 Lost on_lost = nullptr);

    const CopyCounters& counters() const noexcept { return counters_; }
    std::uint64_t transmissions() const noexcept { return transmissions_; }

private:
    void emit(NodeId sender, const Packet& p, bool relay);
    void send_copy(NodeId sender, NodeId receiver, const Packet& p, bool reachable, const Receive& on_receive,
                   const Lost& on_lost);

    Engine& engine_;
    MediumConfig config_;
    Rng& rng_;
    Topology topology_;
    std::uint64_t next_id_{1};
    CopyCounters counters_;
    std::uint64_t transmissions_{0};
};

} // namespace slcm::net
