#include "slcm/net/gri.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace slcm::net {

namespace {

struct NodeState {
    NodeId parent{0};
    std::uint32_t depth{0};
    bool designated{false};
    NodeId designator{0}; // sender whose relay list named this node
    bool decided{false};
    bool forwarder{false};
    bool returned{false};
    bool info_seen{false};
    std::set<NodeId> info_covered;
    std::vector<std::vector<TrailEntry>> child_trails;
    Packet go;
};

class GriSession : public std::enable_shared_from_this<GriSession> {
public:
    GriSession(Medium& medium, NodeId initiator, GriConfig config, GriHandlers handlers, Rng& rng)
        : medium_(medium), config_(config), handlers_(std::move(handlers)), rng_(rng)
    {
        result_ = std::make_shared<GriResult>();
        result_->initiator = initiator;
        if (config_.jitter <= 0.0) {
            config_.jitter = default_jitter(medium);
        }
        if (config_.response_timer <= 0.0) {
            config_.response_timer = default_response_timer(medium, medium.topology().size());
        }
        hop_time_ = medium.hop_delay() + config_.jitter;
    }

    std::shared_ptr<const GriResult> result() const { return result_; }

    void start()
    {
        const auto me = result_->initiator;
        start_ = medium_.engine().now();
        auto& s = nodes_[me];
        s.parent = me;
        s.designated = s.decided = s.forwarder = true;
        send_go(me, std::nullopt, false, medium_.make_packet(PacketKind::GriGo, config_.channel, me, 0));
        auto self = shared_from_this();
        medium_.engine().schedule(start_ + config_.response_timer, [self] { self->finish(); });
    }

private:
    bool participates(NodeId v) const { return !handlers_.participates || handlers_.participates(v); }

    std::vector<NodeId> live_neighbors(NodeId v) const
    {
        std::vector<NodeId> out;
        for (auto u : medium_.topology().neighbors(v)) {
            if (participates(u)) {
                out.push_back(u);
            }
        }
        return out;
    }

    // Partial dominant pruning: pick, greedily, neighbours of `at` outside
    // the upstream sender's range that cover the 2-hop nodes nobody upstream
    // reaches.
    std::vector<NodeId> choose_relays(NodeId at, std::optional<NodeId> upstream) const
    {
        const auto mine = live_neighbors(at);
        std::set<NodeId> reached(mine.begin(), mine.end());
        reached.insert(at);
        std::set<NodeId> candidates(mine.begin(), mine.end());
        if (upstream) {
            const auto theirs = live_neighbors(*upstream);
            reached.insert(*upstream);
            reached.insert(theirs.begin(), theirs.end());
            for (auto u : theirs) {
                candidates.erase(u);
                if (reached.count(u) != 0 && std::binary_search(mine.begin(), mine.end(), u)) {
                    for (auto w : live_neighbors(u)) {
                        reached.insert(w);
                    }
                }
            }
            candidates.erase(*upstream);
        }
        std::set<NodeId> uncovered;
        for (auto u : mine) {
            for (auto w : live_neighbors(u)) {
                if (reached.count(w) == 0) {
                    uncovered.insert(w);
                }
            }
        }
        std::vector<NodeId> relays;
        while (!uncovered.empty()) {
            NodeId best = 0;
            std::size_t best_gain = 0;
            for (auto c : candidates) {
                std::size_t gain = 0;
                for (auto w : live_neighbors(c)) {
                    gain += uncovered.count(w);
                }
                if (gain > best_gain) {
                    best = c;
                    best_gain = gain;
                }
            }
            if (best_gain == 0) {
                break;
            }
            relays.push_back(best);
            candidates.erase(best);
            for (auto w : live_neighbors(best)) {
                uncovered.erase(w);
            }
        }
        std::sort(relays.begin(), relays.end());
        return relays;
    }

    void send_go(NodeId from, std::optional<NodeId> upstream, bool relay, Packet p)
    {
        p.relays = config_.flood_forwarding ? std::vector<NodeId>{} : choose_relays(from, upstream);
        p.payload = config_.go_payload + 4 * p.relays.size();
        ++result_->packets_go;
        auto self = shared_from_this();
        medium_.broadcast(from, std::move(p), relay,
                          [self](NodeId to, NodeId sender, const Packet& pk) { self->on_go(to, sender, pk); });
    }

    void on_go(NodeId at, NodeId sender, const Packet& p)
    {
        if (handlers_.on_overhear) {
            handlers_.on_overhear(at);
        }
        if (!participates(at) || at == result_->initiator) {
            return;
        }
        const bool named = config_.flood_forwarding || std::binary_search(p.relays.begin(), p.relays.end(), at);
        auto it = nodes_.find(at);
        if (it != nodes_.end()) {
            auto& s = it->second;
            if (named && !s.designated) {
                s.designated = true;
                s.designator = sender;
            }
            if (s.decided && s.designated && !s.forwarder) {
                // Named after answering as a leaf: still forward so the
                // sender's 2-hop cover holds.
                s.forwarder = true;
                send_go(at, s.designator, true, s.go);
            }
            return;
        }
        auto& s = nodes_[at];
        s.parent = sender;
        s.depth = p.hops + 1;
        s.designated = named;
        s.designator = sender;
        s.go = p;
        s.go.hops = s.depth;

        auto self = shared_from_this();
        const double wait = config_.flood_forwarding ? 0.0 : uniform_real(rng_, 0.0, config_.jitter);
        medium_.engine().schedule_in(wait, [self, at] { self->decide(at); });
    }

    void decide(NodeId at)
    {
        auto& s = nodes_.at(at);
        s.decided = true;
        if (!s.designated) {
            send_return(at);
            return;
        }
        s.forwarder = true;
        send_go(at, s.designator, true, s.go);
        // One slot per level, leaving each child's answer a slot to arrive.
        const double slot = start_ + config_.response_timer - (s.depth + 1) * hop_time_;
        auto self = shared_from_this();
        medium_.engine().schedule(slot, [self, at] { self->send_return(at); });
    }

    void send_return(NodeId at)
    {
        auto& s = nodes_.at(at);
        if (s.returned) {
            return;
        }
        s.returned = true;
        std::vector<TrailEntry> trail;
        for (const auto& t : s.child_trails) {
            trail.insert(trail.end(), t.begin(), t.end());
        }
        trail.push_back({at, static_cast<std::uint32_t>(s.child_trails.size())});
        auto p = medium_.make_packet(PacketKind::GriReturn, config_.channel, at, 8 * trail.size());
        p.trail = std::move(trail);
        forward_return(at, s.parent, std::move(p), false);
    }

    void forward_return(NodeId from, NodeId to, Packet p, bool relay)
    {
        ++result_->packets_return;
        auto self = shared_from_this();
        medium_.unicast(
            from, to, std::move(p), relay,
            [self](NodeId at, NodeId, const Packet& pk) { self->on_return(at, pk); },
            [self](NodeId to, NodeId sender, const Packet& pk) { self->reroute(sender, to, pk); });
    }

    // The link to `failed` broke: hand the trail to the shallowest
    // forwarder in range that is closer to the initiator.
    void reroute(NodeId at, NodeId failed, const Packet& p)
    {
        const auto mine = nodes_.find(at);
        std::optional<NodeId> best;
        std::uint32_t best_depth = mine == nodes_.end() ? 0 : mine->second.depth;
        for (auto u : live_neighbors(at)) {
            const auto it = nodes_.find(u);
            if (u == failed || it == nodes_.end() || !it->second.forwarder || it->second.depth >= best_depth) {
                continue;
            }
            best = u;
            best_depth = it->second.depth;
        }
        if (!best) {
            result_->completed = false;
            return;
        }
        forward_return(at, *best, p, true);
    }

    void on_return(NodeId at, const Packet& p)
    {
        if (at == result_->initiator) {
            if (result_->finished) {
                result_->completed = false;
                return;
            }
            result_->returns.push_back(p.trail);
            return;
        }
        auto& s = nodes_.at(at);
        if (!s.returned) {
            s.child_trails.push_back(p.trail);
            return;
        }
        // Too late to aggregate: pass it on unchanged.
        result_->completed = false;
        forward_return(at, s.parent, p, true);
    }

    void finish()
    {
        result_->finished = true;
        std::set<NodeId> roster;
        std::set<NodeId> relays;
        for (const auto& t : result_->returns) {
            for (const auto& e : t) {
                roster.insert(e.id);
                if (e.children > 0) {
                    relays.insert(e.id);
                }
            }
        }
        roster.erase(result_->initiator);
        result_->roster.assign(roster.begin(), roster.end());
        relays_.assign(relays.begin(), relays.end());

        std::optional<std::size_t> info;
        if (handlers_.on_roster) {
            info = handlers_.on_roster(*result_);
        }
        if (info && !result_->roster.empty()) {
            const auto me = result_->initiator;
            const std::size_t payload = *info + 4 * (result_->roster.size() + relays_.size());
            nodes_[me].info_seen = true;
            send_info(me, false, medium_.make_packet(PacketKind::GriInfo, config_.channel, me, payload));
        }
        if (handlers_.on_done) {
            handlers_.on_done(*result_);
        }
    }

    void send_info(NodeId from, bool relay, Packet p)
    {
        ++result_->packets_info;
        auto self = shared_from_this();
        medium_.broadcast(from, std::move(p), relay,
                          [self](NodeId to, NodeId sender, const Packet& pk) { self->on_info(to, sender, pk); });
    }

    void on_info(NodeId at, NodeId sender, const Packet& p)
    {
        if (!participates(at) || at == result_->initiator) {
            return;
        }
        auto& s = nodes_[at];
        const auto sender_ns = medium_.topology().neighbors(sender);
        s.info_covered.insert(sender);
        s.info_covered.insert(sender_ns.begin(), sender_ns.end());
        if (s.info_seen) {
            return;
        }
        s.info_seen = true;
        s.info_covered.insert(at);
        if (handlers_.on_info) {
            handlers_.on_info(at);
        }
        if (config_.flood_forwarding) {
            send_info(at, true, p);
            return;
        }
        if (!std::binary_search(relays_.begin(), relays_.end(), at)) {
            return;
        }
        auto self = shared_from_this();
        medium_.engine().schedule_in(uniform_real(rng_, 0.0, config_.jitter), [self, at, p] {
            auto& st = self->nodes_.at(at);
            for (auto u : self->live_neighbors(at)) {
                if (st.info_covered.count(u) == 0) {
                    self->send_info(at, true, p);
                    return;
                }
            }
        });
    }

    Medium& medium_;
    GriConfig config_;
    GriHandlers handlers_;
    Rng& rng_;
    std::shared_ptr<GriResult> result_;
    std::map<NodeId, NodeState> nodes_;
    std::vector<NodeId> relays_;
    double start_{0.0};
    double hop_time_{0.0};
};

class FloodSession : public std::enable_shared_from_this<FloodSession> {
public:
    FloodSession(Medium& medium, std::function<bool(NodeId)> participates)
        : medium_(medium), participates_(std::move(participates)), result_(std::make_shared<FloodResult>())
    {
    }

    std::shared_ptr<const FloodResult> result() const { return result_; }

    void start(NodeId initiator, std::size_t payload)
    {
        seen_.insert(initiator);
        send(initiator, false, medium_.make_packet(PacketKind::Flood, Channel::Flood, initiator, payload));
    }

private:
    void send(NodeId from, bool relay, Packet p)
    {
        ++result_->transmissions;
        result_->reached.insert(
            std::upper_bound(result_->reached.begin(), result_->reached.end(), from), from);
        auto self = shared_from_this();
        medium_.broadcast(from, std::move(p), relay, [self](NodeId to, NodeId, const Packet& pk) {
            if ((self->participates_ && !self->participates_(to)) || !self->seen_.insert(to).second) {
                return;
            }
            self->send(to, true, pk);
        });
    }

    Medium& medium_;
    std::function<bool(NodeId)> participates_;
    std::shared_ptr<FloodResult> result_;
    std::set<NodeId> seen_;
};

} // namespace

double default_jitter(const Medium& medium)
{
    return medium.hop_delay() / 4.0;
}

double default_response_timer(const Medium& medium, std::size_t hops)
{
    const double per_hop = medium.hop_delay() + default_jitter(medium);
    return 2.0 * per_hop * static_cast<double>(std::max<std::size_t>(hops, 1));
}

std::shared_ptr<const GriResult> gri_broadcast(Medium& medium, NodeId initiator, GriConfig config,
                                               GriHandlers handlers, Rng& rng)
{
    if (!medium.topology().contains(initiator) ||
        (handlers.participates && !handlers.participates(initiator))) {
        throw GriError("InitiatorNotLegitimate: node " + std::to_string(initiator));
    }
    auto session = std::make_shared<GriSession>(medium, initiator, config, std::move(handlers), rng);
    session->start();
    return session->result();
}

std::shared_ptr<const FloodResult> flood_broadcast(Medium& medium, NodeId initiator, std::size_t payload,
                                                   std::function<bool(NodeId)> participates)
{
    auto session = std::make_shared<FloodSession>(medium, std::move(participates));
    session->start(initiator, payload);
    return session->result();
}

} // namespace slcm::net
