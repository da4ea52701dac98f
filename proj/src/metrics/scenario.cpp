#include "slcm/metrics/scenario.hpp"

#include "slcm/common/rng.hpp"
#include "slcm/net/engine.hpp"
#include "slcm/net/gri.hpp"
#include "slcm/net/medium.hpp"
#include "slcm/net/mobility.hpp"
#include "slcm/net/topology.hpp"
#include "slcm/protocol/operations.hpp"
#include "slcm/zkp/commitment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <random>

namespace slcm::metrics {

namespace {

using net::NodeId;
using protocol::LifeState;
using protocol::UpdateEvent;
using protocol::VertexId;

// Independent generator streams so that, say, a mobility change does not
// shift every protocol draw.
enum Stream : std::uint64_t { kPlacement = 1, kMobility, kMedium, kChurn, kProtocol };

constexpr std::size_t kEventHeader = 8 + 8 + 32; // stage, time, digest

std::size_t event_size(const UpdateEvent& e)
{
    if (const auto* ins = std::get_if<protocol::InsertionUpdate>(&e.body)) {
        return kEventHeader + 4 + 4 * ins->group.members.size() + 8 + 4;
    }
    if (std::holds_alternative<protocol::DeletionUpdate>(e.body)) {
        return kEventHeader + 8;
    }
    return kEventHeader + 4 + 4 * std::get<protocol::RosterUpdate>(e.body).proofs.size();
}

struct Device {
    protocol::NodeRecord rec;
    net::MobilityState motion;
    bool powered{true};
    bool retired{false};
    bool busy{false};  // inside an access-control exchange
    bool stale{false}; // overheard a go packet from a later stage
    std::uint64_t heard_stage{0}; // latest stage seen in any go packet
    bool pol_armed{false};
    double last_go_heard{-std::numeric_limits<double>::infinity()};
    double wake_at{0.0};
};

struct Message {
    NodeId from;
    NodeId to;
    net::Channel channel;
    net::PacketKind kind;
    std::size_t payload;
};

class Scenario {
public:
    explicit Scenario(const ScenarioConfig& cfg)
        : cfg_(cfg),
          arena_{cfg.width, cfg.height},
          radio_{cfg.radio_range, arena_},
          speeds_{cfg.speed_min, cfg.speed_max},
          mobility_rng_(derive_rng(cfg.seed, kMobility)),
          medium_rng_(derive_rng(cfg.seed, kMedium)),
          churn_rng_(derive_rng(cfg.seed, kChurn)),
          rng_(derive_rng(cfg.seed, kProtocol)),
          medium_(engine_, {cfg.hop_latency, cfg.processing_delay, cfg.loss_prob}, medium_rng_),
          threshold_(protocol::ThresholdT::initial(3.0 * cfg.pol_period, cfg.epsilon, 2.0 * cfg.pol_period))
    {
    }

    ScenarioResult run()
    {
        initialize();
        const auto ticks = static_cast<std::uint64_t>(std::floor(cfg_.duration / cfg_.mobility_step));
        for (std::uint64_t k = 1; k <= ticks; ++k) {
            engine_.schedule(static_cast<double>(k) * cfg_.mobility_step, [this] { tick(); });
        }
        engine_.run();
        return finish();
    }

private:
    double now() const { return engine_.now(); }

    void note(net::EventKind kind, NodeId node, std::string extra)
    {
        engine_.record({now(), kind, node, net::PacketKind::None, 0, 0, std::move(extra)});
    }

    static bool authenticated(const Device& d)
    {
        return d.powered && !d.retired && d.rec.vertex && d.rec.cycle &&
               protocol::normalize(d.rec.state) == LifeState::OnAuthenticated;
    }

    void set_state(NodeId id, LifeState to)
    {
        auto& rec = devices_.at(id).rec;
        const auto settled = protocol::normalize(rec.state);
        if (settled != rec.state && to != settled) {
            record_state(id, rec.state, settled);
            rec.state = settled;
        }
        if (rec.state == to) {
            return;
        }
        const auto from = rec.state;
        rec.state = protocol::transition(from, to);
        record_state(id, from, to);
    }

    void record_state(NodeId id, LifeState from, LifeState to)
    {
        note(net::EventKind::State, id, fmt::format("from={};to={}", protocol::to_string(from), protocol::to_string(to)));
    }

    double retention() const { return std::max(threshold_.current, 2.0 * cfg_.pol_period); }

    std::vector<VertexId> online_vertices() const
    {
        std::vector<VertexId> out;
        for (const auto& [id, d] : devices_) {
            if (authenticated(d)) {
                out.push_back(*d.rec.vertex);
            }
        }
        return out;
    }

    std::vector<NodeId> authenticated_devices() const
    {
        std::vector<NodeId> out;
        for (const auto& [id, d] : devices_) {
            if (authenticated(d)) {
                out.push_back(id);
            }
        }
        return out;
    }

    void refresh_topology()
    {
        std::vector<net::Placement> placed;
        for (const auto& [id, d] : devices_) {
            if (d.powered && !d.retired) {
                placed.push_back({id, d.motion.position});
            }
        }
        medium_.set_topology(net::neighbors(radio_, placed));
    }

    void initialize()
    {
        Rng place = derive_rng(cfg_.seed, kPlacement);
        auto placements = net::connected_placement(cfg_.nodes, radio_, place);
        if (!placements) {
            placements = net::random_placement(cfg_.nodes, arena_, place);
        }
        std::vector<VertexId> founders;
        for (const auto& p : *placements) {
            founders.push_back(VertexId{p.id});
        }
        protocol::InitOptions opts{cfg_.n_min, retention(), 0.0};
        auto records = protocol::initialize_network(founders, cfg_.degree * cfg_.nodes / 2, cfg_.seed, opts);
        for (const auto& p : *placements) {
            Device d;
            d.rec = std::move(records.at(VertexId{p.id}));
            d.motion = net::initial_mobility(arena_, speeds_, mobility_rng_);
            d.motion.position = p.position;
            devices_.emplace(p.id, std::move(d));
            next_device_ = std::max(next_device_, p.id + 1);
        }
        note(net::EventKind::Meta, 0,
             fmt::format("nodes={};proc={:.6f};seed={};mode={};T={:.6f}", cfg_.nodes, cfg_.processing_delay,
                         cfg_.seed, to_string(cfg_.broadcast_mode), threshold_.current));
        for (const auto& [id, d] : devices_) {
            record_state(id, LifeState::NonLegitimate, LifeState::OnAuthenticated);
        }
        refresh_topology();
    }

    void tick()
    {
        if (terminated_) {
            return;
        }
        const double dt = cfg_.mobility_step;
        for (auto& [id, d] : devices_) {
            if (!d.retired) {
                d.motion = net::step_mobility(d.motion, dt, arena_, speeds_, mobility_rng_);
            }
        }
        settle_states();
        toggle_power(dt);
        refresh_topology();
        for (auto& [id, d] : devices_) {
            if (d.rec.vertex) {
                d.rec.fifo.set_retention(retention());
                d.rec.fifo.evict(now());
            }
        }
        attempt_access();
        if (!lock_ && bernoulli(churn_rng_, cfg_.insert_prob * dt)) {
            attempt_insertion();
        }
        if (!lock_ && bernoulli(churn_rng_, cfg_.delete_prob * dt)) {
            attempt_departure();
        }
        arm_proofs_of_life();
    }

    void settle_states()
    {
        for (auto& [id, d] : devices_) {
            if (d.retired) {
                continue;
            }
            const auto s = d.rec.state;
            if (s != protocol::normalize(s)) {
                set_state(id, protocol::normalize(s));
            }
            if (d.rec.state == LifeState::Deleted) {
                set_state(id, LifeState::NonLegitimate);
            }
            if (d.stale && authenticated(d)) {
                go_out_of_service(id);
            }
            d.stale = false;
        }
    }

    void go_out_of_service(NodeId id)
    {
        auto& d = devices_.at(id);
        set_state(id, LifeState::OutOfService);
        // Out of line since the last update it is known to have applied.
        const auto& events = d.rec.fifo.events();
        d.rec.off_since = events.empty() ? d.rec.last_sync : events.back().time;
        d.rec.last_seen_stage = d.rec.graph.stage();
    }

    void toggle_power(double dt)
    {
        std::exponential_distribution<double> off_time(1.0 / cfg_.mean_off_time);
        for (auto& [id, d] : devices_) {
            if (d.retired || d.busy || id == session_initiator_) {
                continue;
            }
            if (!d.powered) {
                if (d.wake_at <= now()) {
                    d.powered = true;
                }
                continue;
            }
            if (authenticated(d) && bernoulli(churn_rng_, cfg_.off_prob * dt)) {
                set_state(id, LifeState::Off);
                d.rec.off_since = now();
                d.rec.last_seen_stage = d.rec.graph.stage();
                d.powered = false;
                d.pol_armed = false;
                d.wake_at = now() + off_time(churn_rng_);
            }
        }
    }

    // Most up-to-date idle authenticated neighbour that is not behind what
    // `id` has already seen. Neighbours found lagging learn it from the request.
    std::optional<NodeId> authenticated_neighbor(NodeId id)
    {
        const auto& self = devices_.at(id);
        const auto known = std::max(self.heard_stage, self.rec.graph.stage());
        std::optional<NodeId> best;
        std::uint64_t best_stage = 0;
        for (auto n : medium_.topology().neighbors(id)) {
            auto& d = devices_.at(n);
            if (!authenticated(d) || d.busy) {
                continue;
            }
            const auto stage = d.rec.graph.stage();
            if (stage < known) {
                d.stale = true;
                continue;
            }
            if (!best || stage > best_stage) {
                best = n;
                best_stage = stage;
            }
        }
        return best;
    }

    // ---- access control -------------------------------------------------

    void attempt_access()
    {
        for (auto& [id, d] : devices_) {
            const bool returning = d.rec.state == LifeState::Off || d.rec.state == LifeState::OutOfService;
            if (!d.powered || d.retired || d.busy || d.rec.isolated || !returning) {
                continue;
            }
            if (const auto auth = authenticated_neighbor(id)) {
                start_access(id, *auth);
            }
        }
    }

    void start_access(NodeId sup_id, NodeId auth_id)
    {
        auto& sup = devices_.at(sup_id);
        auto& auth = devices_.at(auth_id);
        sup.busy = auth.busy = true;

        auto trial = std::make_shared<protocol::NodeRecord>(sup.rec);
        const auto online = online_vertices();
        protocol::AccessRequest req{now(), threshold_.current, cfg_.zkp_rounds, online};
        std::optional<protocol::AccessOutcome> outcome;
        std::string result;
        try {
            outcome = protocol::handle_access_control(auth.rec, *trial, req, rng_);
            result = outcome->status == protocol::AccessStatus::Admitted ? "admitted"
                                                                         : protocol::to_string(outcome->reason);
        } catch (const protocol::ProtocolError& e) {
            // Gap evicted or replay diverged: the device can only rejoin by insertion.
            result = e.code() == protocol::ProtocolErrc::StaleBeyondFifo ? "stale" : "diverged";
            *trial = sup.rec;
            trial->state = protocol::transition(trial->state, LifeState::Deleted);
            trial->vertex.reset();
            trial->cycle.reset();
        }
        auth.rec.last_exemption = now();

        auto msgs = std::make_shared<std::vector<Message>>();
        msgs->push_back({sup_id, auth_id, net::Channel::Access, net::PacketKind::ZkpMsg,
                         zkp::encode_graph(sup.rec.graph).size() + 8});
        std::size_t replay = 8;
        if (outcome && outcome->transcript) {
            for (const auto& round : outcome->transcript->rounds) {
                msgs->push_back({sup_id, auth_id, net::Channel::Zkp, net::PacketKind::ZkpMsg, 64});
                msgs->push_back({auth_id, sup_id, net::Channel::Zkp, net::PacketKind::ZkpMsg, 1});
                msgs->push_back({sup_id, auth_id, net::Channel::Zkp, net::PacketKind::ZkpMsg,
                                 zkp::wire_size(round.response)});
            }
            if (outcome->status == protocol::AccessStatus::Admitted) {
                if (const auto gap = auth.rec.fifo.gap_since(sup.rec.graph.stage())) {
                    for (const auto& e : *gap) {
                        replay += event_size(e);
                    }
                }
            }
        }
        msgs->push_back({auth_id, sup_id, net::Channel::Access, net::PacketKind::ZkpMsg, replay});

        const auto rounds = outcome && outcome->transcript ? outcome->transcript->round_count() : 0;
        const bool admitted = outcome && outcome->status == protocol::AccessStatus::Admitted;
        const double offline = outcome ? outcome->offline_duration : now() - sup.rec.off_since;
        send_chain(msgs, 0, [=, this](bool delivered) {
            auto& s = devices_.at(sup_id);
            auto& a = devices_.at(auth_id);
            s.busy = a.busy = false;
            if (!delivered) {
                note(net::EventKind::Access, sup_id, fmt::format("auth={};result=aborted;rounds={}", auth_id, rounds));
                return;
            }
            finish_access(sup_id, auth_id, *trial, admitted, offline);
            note(net::EventKind::Access, sup_id,
                 fmt::format("auth={};result={};rounds={};offline={:.6f}", auth_id, result, rounds, offline));
        });
    }

    void finish_access(NodeId sup_id, NodeId auth_id, protocol::NodeRecord trial, bool admitted, double offline)
    {
        auto& s = devices_.at(sup_id);
        const auto& a = devices_.at(auth_id);
        if (admitted && trial.graph.stage() != a.rec.graph.stage()) {
            // The authenticator moved on while the exchange was in flight.
            try {
                if (const auto gap = a.rec.fifo.gap_since(trial.graph.stage())) {
                    for (const auto& e : *gap) {
                        protocol::apply_update(trial, e);
                    }
                }
            } catch (const protocol::ProtocolError&) {
                s.stale = true;
            }
            if (trial.graph.stage() != a.rec.graph.stage()) {
                s.stale = true;
            }
        }
        const auto from = s.rec.state;
        s.rec = std::move(trial);
        if (s.rec.state != from) {
            record_state(sup_id, from, s.rec.state);
        }
        if (admitted) {
            threshold_ = protocol::update_threshold(threshold_, offline);
            note(net::EventKind::Meta, sup_id, fmt::format("T={:.6f}", threshold_.current));
        }
    }

    void send_chain(std::shared_ptr<std::vector<Message>> msgs, std::size_t i, std::function<void(bool)> done)
    {
        if (i == msgs->size()) {
            done(true);
            return;
        }
        const auto& m = (*msgs)[i];
        auto p = medium_.make_packet(m.kind, m.channel, m.from, m.payload);
        medium_.unicast(
            m.from, m.to, std::move(p), false,
            [this, msgs, i, done](NodeId, NodeId, const net::Packet&) { send_chain(msgs, i + 1, done); },
            [done](NodeId, NodeId, const net::Packet&) { done(false); });
    }

    // ---- GRI sessions -----------------------------------------------------

    struct Session {
        NodeId initiator{0};
        std::uint64_t stage{0};
        std::vector<UpdateEvent> events;
        std::string_view cause{"leave"}; // reason tagged on deletions
    };

    using Decide = std::function<std::vector<UpdateEvent>(Session&, const net::GriResult&)>;
    using After = std::function<void(Session&)>;

    void start_session(NodeId initiator, net::Channel channel, std::size_t go_payload, Decide decide, After after)
    {
        lock_ = true;
        session_initiator_ = initiator;
        auto session = std::make_shared<Session>();
        session->initiator = initiator;
        session->stage = devices_.at(initiator).rec.graph.stage();

        net::GriConfig config;
        config.channel = channel;
        config.go_payload = go_payload;
        config.flood_forwarding = cfg_.broadcast_mode == BroadcastMode::Flood;
        config.response_timer = net::default_response_timer(medium_, radio_.hop_bound(medium_.topology().size()));

        net::GriHandlers h;
        const auto stage = session->stage;
        h.participates = [this, stage](NodeId v) {
            const auto it = devices_.find(v);
            return it != devices_.end() && authenticated(it->second) && it->second.rec.graph.stage() == stage;
        };
        h.on_overhear = [this, stage](NodeId v) {
            auto& d = devices_.at(v);
            d.last_go_heard = now();
            d.heard_stage = std::max(d.heard_stage, stage);
            if (authenticated(d) && d.rec.graph.stage() < stage) {
                d.stale = true;
            }
        };
        h.on_roster = [this, session, decide](const net::GriResult& r) -> std::optional<std::size_t> {
            auto& init = devices_.at(session->initiator);
            if (!authenticated(init)) {
                return std::nullopt;
            }
            session->events = decide(*session, r);
            std::size_t payload = 0;
            for (const auto& e : session->events) {
                payload += event_size(e);
                record_update(*session, e);
            }
            deliver(session->initiator, session->events);
            if (session->events.empty()) {
                return std::nullopt;
            }
            return payload;
        };
        h.on_info = [this, session](NodeId v) { deliver(v, session->events); };
        const double hold = config.response_timer;
        h.on_done = [this, session, after, hold](const net::GriResult&) {
            after(*session);
            // Keep the lock while the information phase drains.
            engine_.schedule_in(hold, [this] {
                lock_ = false;
                session_initiator_ = 0;
            });
        };
        net::gri_broadcast(medium_, initiator, config, std::move(h), rng_);
    }

    void record_update(const Session& s, const UpdateEvent& e)
    {
        std::string extra;
        if (const auto* ins = std::get_if<protocol::InsertionUpdate>(&e.body)) {
            extra = fmt::format("type=ins;stage={};vertex={}", e.stage, ins->vertex.value);
        } else if (const auto* del = std::get_if<protocol::DeletionUpdate>(&e.body)) {
            extra = fmt::format("type=del;stage={};vertex={};cause={}", e.stage, del->vertex.value, s.cause);
        } else {
            extra = fmt::format("type=roster;stage={};proofs={}", e.stage,
                                std::get<protocol::RosterUpdate>(e.body).proofs.size());
        }
        note(net::EventKind::Update, s.initiator, std::move(extra));
    }

    // Applies a session's events to one recipient. A gap or mismatch means
    // the recipient missed an earlier broadcast.
    void deliver(NodeId id, const std::vector<UpdateEvent>& events)
    {
        auto& d = devices_.at(id);
        for (const auto& e : events) {
            if (!authenticated(d)) {
                return;
            }
            const auto stage = d.rec.graph.stage();
            if (e.changes_membership() ? e.stage <= stage : e.stage < stage) {
                continue;
            }
            if (!e.changes_membership() && e.stage > stage) {
                go_out_of_service(id);
                return;
            }
            try {
                protocol::apply_update(d.rec, e);
            } catch (const protocol::ProtocolError&) {
                go_out_of_service(id);
                return;
            }
            if (!d.rec.vertex) {
                record_state(id, LifeState::OnAuthenticated, d.rec.state);
                set_state(id, LifeState::NonLegitimate);
                return;
            }
        }
    }

    std::vector<VertexId> roster_vertices(const net::GriResult& r, const graph::NetworkGraph& g) const
    {
        std::vector<VertexId> out;
        for (auto id : r.roster) {
            const auto& d = devices_.at(id);
            if (d.rec.vertex && g.has_vertex(*d.rec.vertex)) {
                out.push_back(*d.rec.vertex);
            }
        }
        return out;
    }

    // ---- proof of life ----------------------------------------------------

    void arm_proofs_of_life()
    {
        for (auto& [id, d] : devices_) {
            if (d.pol_armed || !authenticated(d)) {
                continue;
            }
            if (const auto action = protocol::proof_of_life_tick(d.rec, now(), threshold_.current, rng_)) {
                d.pol_armed = true;
                const double armed_at = now();
                engine_.schedule_in(action->defer, [this, id = id, armed_at] { fire_proof_of_life(id, armed_at); });
            }
        }
    }

    void fire_proof_of_life(NodeId id, double armed_at)
    {
        auto& d = devices_.at(id);
        d.pol_armed = false;
        if (terminated_ || now() > cfg_.duration || lock_ || !authenticated(d) || d.last_go_heard > armed_at) {
            return;
        }
        if (now() - d.rec.last_sync <= threshold_.current) {
            return;
        }
        start_session(
            id, net::Channel::ProofOfLife, 16,
            [this](Session& s, const net::GriResult& r) {
                auto& init = devices_.at(s.initiator);
                const auto responders = roster_vertices(r, init.rec.graph);
                auto decision = protocol::conclude_proof_of_life(init.rec, responders, now());
                if (!decision.committed) {
                    note(net::EventKind::Meta, s.initiator,
                         fmt::format("pol=cancelled;answers={};order={}", responders.size(), init.rec.graph.order()));
                    return std::vector<UpdateEvent>{};
                }
                s.cause = "prune";
                std::vector<UpdateEvent> events{*decision.update};
                auto view = init.rec;
                protocol::apply_update(view, events.front());
                try {
                    for (auto v : protocol::prune_dead_nodes(view, now(), threshold_.current, cfg_.n_min)) {
                        events.push_back(protocol::make_deletion(view, v, now(), cfg_.n_min));
                        protocol::apply_update(view, events.back());
                    }
                } catch (const graph::GraphError& e) {
                    if (e.code() != graph::GraphErrc::NetworkTooSmall) {
                        throw;
                    }
                    terminate(s.initiator, view.graph.order());
                }
                return events;
            },
            [](Session&) {});
    }

    void terminate(NodeId by, std::size_t order)
    {
        terminated_ = true;
        note(net::EventKind::Term, by, fmt::format("reason=network-too-small;order={}", order));
    }

    // ---- churn --------------------------------------------------------------

    void attempt_insertion()
    {
        const auto members = authenticated_devices();
        if (members.empty()) {
            return;
        }
        // A device that lost its membership rejoins first; otherwise a new
        // one appears next to a random member.
        std::optional<NodeId> sup_id;
        for (const auto& [id, d] : devices_) {
            if (d.powered && !d.retired && !d.busy && !d.rec.isolated && d.rec.state == LifeState::NonLegitimate) {
                sup_id = id;
                break;
            }
        }
        if (!sup_id) {
            const auto& host = devices_.at(members[uniform_index(churn_rng_, members.size())]).motion.position;
            const double r = uniform_real(churn_rng_, 0.0, cfg_.radio_range / 2.0);
            const double a = uniform_real(churn_rng_, 0.0, 2.0 * std::acos(-1.0));
            Device d;
            d.motion = net::initial_mobility(arena_, speeds_, mobility_rng_);
            d.motion.position = {std::clamp(host.x + r * std::cos(a), 0.0, arena_.width),
                                 std::clamp(host.y + r * std::sin(a), 0.0, arena_.height)};
            d.rec.device = protocol::DeviceId{next_device_};
            sup_id = next_device_++;
            devices_.emplace(*sup_id, std::move(d));
            note(net::EventKind::Meta, *sup_id, "spawn");
            refresh_topology();
        }
        const auto auth_id = authenticated_neighbor(*sup_id);
        if (!auth_id) {
            return;
        }
        const NodeId sup = *sup_id;
        start_session(
            *auth_id, net::Channel::Insertion, 8,
            [this, sup](Session& s, const net::GriResult& r) {
                auto& auth = devices_.at(s.initiator);
                const auto answers = roster_vertices(r, auth.rec.graph).size();
                protocol::InsertionRequest req{now(), cfg_.group_size, std::nullopt};
                auto outcome = protocol::handle_insertion(auth.rec, answers, req, rng_);
                if (outcome.status != protocol::InsertionStatus::Inserted) {
                    note(net::EventKind::Meta, s.initiator,
                         fmt::format("insertion=aborted;answers={};order={}", answers, auth.rec.graph.order()));
                    return std::vector<UpdateEvent>{};
                }
                pending_vertex_[sup] = *outcome.vertex;
                return std::vector<UpdateEvent>{*outcome.update};
            },
            [this, sup](Session& s) { admit(sup, s.initiator); });
    }

    void admit(NodeId sup_id, NodeId auth_id)
    {
        const auto it = pending_vertex_.find(sup_id);
        if (it == pending_vertex_.end()) {
            return;
        }
        const auto vertex = it->second;
        pending_vertex_.erase(it);
        const auto& auth = devices_.at(auth_id).rec;
        const auto payload = zkp::encode_graph(auth.graph).size() + zkp::encode_cycle(*auth.cycle).size();
        auto p = medium_.make_packet(net::PacketKind::InsertionMsg, net::Channel::Insertion, auth_id, payload);
        medium_.unicast(auth_id, sup_id, std::move(p), false,
                        [this, vertex](NodeId to, NodeId from, const net::Packet&) {
                            auto& d = devices_.at(to);
                            const auto& a = devices_.at(from);
                            if (d.rec.state != LifeState::NonLegitimate || !authenticated(a) ||
                                !a.rec.graph.has_vertex(vertex)) {
                                return;
                            }
                            protocol::admit_supplicant(d.rec, a.rec, vertex, now());
                            record_state(to, LifeState::NonLegitimate, LifeState::Added);
                        });
    }

    void attempt_departure()
    {
        const auto members = authenticated_devices();
        if (members.size() < 2) {
            return;
        }
        const NodeId victim = members[uniform_index(churn_rng_, members.size())];
        std::vector<NodeId> reporters;
        const auto stage = devices_.at(victim).rec.graph.stage();
        for (auto id : members) {
            if (id != victim && !devices_.at(id).busy && devices_.at(id).rec.graph.stage() == stage) {
                reporters.push_back(id);
            }
        }
        auto& v = devices_.at(victim);
        if (reporters.empty() || v.busy || v.rec.graph.order() <= std::max<std::size_t>(cfg_.n_min, 3)) {
            return;
        }
        const NodeId reporter = reporters[uniform_index(churn_rng_, reporters.size())];
        const auto vertex = *v.rec.vertex;
        set_state(victim, LifeState::Deleted);
        v.rec.vertex.reset();
        v.rec.cycle.reset();
        v.retired = true;
        v.powered = false;
        refresh_topology();
        start_session(
            reporter, net::Channel::Deletion, 8,
            [this, vertex](Session& s, const net::GriResult&) {
                const auto& rec = devices_.at(s.initiator).rec;
                if (!rec.graph.has_vertex(vertex)) {
                    return std::vector<UpdateEvent>{};
                }
                return std::vector<UpdateEvent>{protocol::make_deletion(rec, vertex, now(), cfg_.n_min)};
            },
            [](Session&) {});
    }

    // ---- wrap-up --------------------------------------------------------------

    ScenarioResult finish()
    {
        ScenarioResult out;
        std::map<std::pair<std::uint64_t, zkp::Digest>, std::size_t> groups;
        for (const auto& [id, d] : devices_) {
            if (authenticated(d)) {
                ++out.authenticated;
                ++groups[{d.rec.graph.stage(), protocol::graph_digest(d.rec.graph)}];
            }
        }
        std::size_t largest = 0;
        for (const auto& [key, count] : groups) {
            if (count > largest) {
                largest = count;
                out.final_stage = key.first;
            }
        }
        for (const auto& [id, d] : devices_) {
            if (authenticated(d) && d.rec.graph.stage() == out.final_stage) {
                out.members = d.rec.graph.order();
                break;
            }
        }
        out.divergent = out.authenticated - largest;
        out.final_threshold = threshold_.current;
        out.terminated = terminated_;
        out.trace = engine_.trace();
        out.summary = summarize(out.trace);
        return out;
    }

    ScenarioConfig cfg_;
    net::Arena arena_;
    net::RadioModel radio_;
    net::SpeedRange speeds_;
    net::Engine engine_;
    Rng mobility_rng_;
    Rng medium_rng_;
    Rng churn_rng_;
    Rng rng_;
    net::Medium medium_;
    protocol::ThresholdT threshold_;
    std::map<NodeId, Device> devices_;
    std::map<NodeId, VertexId> pending_vertex_;
    NodeId next_device_{1};
    NodeId session_initiator_{0};
    bool lock_{false};
    bool terminated_{false};
};

} // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg)
{
    validate(cfg);
    Scenario s(cfg);
    return s.run();
}

} // namespace slcm::metrics
