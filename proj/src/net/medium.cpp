#include "slcm/net/medium.hpp"

#include <fmt/format.h>

namespace slcm::net {

Medium::Medium(Engine& engine, MediumConfig config, Rng& rng) : engine_(engine), config_(config), rng_(rng) {}

Packet Medium::make_packet(PacketKind kind, Channel channel, NodeId origin, std::size_t payload)
{
    Packet p;
    p.id = next_id_++;
    p.kind = kind;
    p.channel = channel;
    p.origin = origin;
    p.payload = payload;
    p.created_at = engine_.now();
    return p;
}

void Medium::emit(NodeId sender, const Packet& p, bool relay)
{
    ++transmissions_;
    engine_.record({engine_.now(), relay ? EventKind::Fwd : EventKind::Gen, sender, p.kind, p.id, p.size(),
                    fmt::format("ch={};org={:.6f}", to_string(p.channel), p.created_at)});
}

void Medium::send_copy(NodeId sender, NodeId receiver, const Packet& p, bool reachable, const Receive& on_receive,
                       const Lost& on_lost)
{
    ++counters_.created;
    const bool lost = !reachable || bernoulli(rng_, config_.loss_probability);
    const double at = engine_.now() + hop_delay();
    engine_.schedule(at, [this, sender, receiver, p, lost, on_receive, on_lost] {
        const auto extra = fmt::format("ch={};org={:.6f};from={}", to_string(p.channel), p.created_at, sender);
        if (lost) {
            ++counters_.dropped;
            engine_.record({engine_.now(), EventKind::Drop, receiver, p.kind, p.id, p.size(), extra});
            if (on_lost) {
                on_lost(receiver, sender, p);
            }
            return;
        }
        ++counters_.delivered;
        engine_.record({engine_.now(), EventKind::Rx, receiver, p.kind, p.id, p.size(), extra});
        if (on_receive) {
            on_receive(receiver, sender, p);
        }
    });
}

void Medium::broadcast(NodeId sender, Packet packet, bool relay, Receive on_receive)
{
    emit(sender, packet, relay);
    for (auto r : topology_.neighbors(sender)) {
        send_copy(sender, r, packet, true, on_receive, nullptr);
    }
}

void Medium::unicast(NodeId sender, NodeId receiver, Packet packet, bool relay, Receive on_receive, Lost on_lost)
{
    emit(sender, packet, relay);
    send_copy(sender, receiver, packet, topology_.linked(sender, receiver), on_receive, on_lost);
}

} // namespace slcm::net
