#include "slcm/protocol/operations.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace slcm::protocol {

namespace {

bool is_authenticated(const NodeRecord& node)
{
    return normalize(node.state) == LifeState::OnAuthenticated && node.vertex && node.cycle;
}

void require_authenticated(const NodeRecord& node, const char* role)
{
    if (!is_authenticated(node)) {
        throw ProtocolError(ProtocolErrc::NotAuthenticated, std::string(role) + " is not an authenticated member");
    }
}

bool contains(std::span<const VertexId> vs, VertexId v)
{
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

UpdateEvent make_event(const graph::NetworkGraph& after, double now, UpdateBody body)
{
    return UpdateEvent{after.stage(), now, std::move(body), graph_digest(after)};
}

void drop_vertex(NodeRecord& node)
{
    node.state = transition(normalize(node.state), LifeState::Deleted);
    node.vertex.reset();
    node.cycle.reset();
}

} // namespace

std::map<VertexId, NodeRecord> initialize_network(std::span<const VertexId> founders, std::size_t edge_count,
                                                  std::uint64_t seed, const InitOptions& options)
{
    std::vector<VertexId> ids(founders.begin(), founders.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() < std::max<std::size_t>(options.n_min, 3)) {
        throw ProtocolError(ProtocolErrc::TooFewFounders,
                            std::to_string(ids.size()) + " founders, need " + std::to_string(options.n_min));
    }

    std::vector<graph::Permutation> perms;
    perms.reserve(ids.size());
    for (auto id : ids) {
        auto rng = derive_rng(seed, id.value);
        perms.push_back(graph::Permutation::random(ids, rng));
    }
    const auto hc = graph::generate_initial_cycle(perms);
    auto rng = derive_rng(seed, 0);
    const auto g = graph::complete_graph(hc, edge_count, rng);

    UpdateQueue fifo(g.stage(), graph_digest(g), options.retention);
    fifo.push(make_event(g, options.now, RosterUpdate{ids.front(), std::vector<VertexId>(ids.begin() + 1, ids.end())}));

    std::map<VertexId, NodeRecord> out;
    for (auto id : ids) {
        NodeRecord r;
        r.device = DeviceId{id.value};
        r.vertex = id;
        r.state = LifeState::OnAuthenticated;
        r.graph = g;
        r.cycle = hc;
        r.fifo = fifo;
        r.last_seen_stage = g.stage();
        r.last_sync = options.now;
        out.emplace(id, std::move(r));
    }
    return out;
}

VertexId next_vertex_id(std::span<const VertexId> live)
{
    std::set<VertexId> taken(live.begin(), live.end());
    std::uint32_t candidate = 1;
    while (taken.count(VertexId{candidate}) != 0) {
        ++candidate;
    }
    return VertexId{candidate};
}

bool quorum_reached(std::size_t answers, std::size_t n)
{
    return answers * 2 >= n;
}

InsertionOutcome handle_insertion(const NodeRecord& authenticator, std::size_t quorum_answers,
                                  const InsertionRequest& request, Rng& rng)
{
    require_authenticated(authenticator, "authenticator");
    const auto& g = authenticator.graph;
    if (request.claimed_id && g.has_vertex(*request.claimed_id)) {
        return {InsertionStatus::Denied, request.claimed_id, std::nullopt};
    }
    if (!quorum_reached(quorum_answers, g.order())) {
        return {InsertionStatus::Aborted, std::nullopt, std::nullopt};
    }
    const auto id = request.claimed_id ? *request.claimed_id : next_vertex_id(g.vertices());
    for (auto size = std::max<std::size_t>(request.group_size, 2);; --size) {
        try {
            auto ins = graph::insert_vertex(g, *authenticator.cycle, id, size, rng);
            auto event = make_event(ins.graph, request.now,
                                    InsertionUpdate{id, std::move(ins.group), ins.splice, *authenticator.vertex});
            return {InsertionStatus::Inserted, id, std::move(event)};
        } catch (const graph::GraphError& e) {
            if (e.code() != graph::GraphErrc::InsufficientNonAdjacentCandidates || size == 2) {
                throw;
            }
        }
    }
}

void admit_supplicant(NodeRecord& supplicant, const NodeRecord& authenticator, VertexId vertex, double now)
{
    supplicant.state = transition(supplicant.state, LifeState::Added);
    supplicant.vertex = vertex;
    supplicant.graph = authenticator.graph;
    supplicant.cycle = authenticator.cycle;
    supplicant.fifo = authenticator.fifo;
    supplicant.last_seen_stage = authenticator.graph.stage();
    supplicant.last_sync = now;
    supplicant.isolated = false;
}

namespace {

// A stage-consistent event the local graph cannot absorb means the views split.
template <class F>
auto diverged_on_error(F&& op)
{
    try {
        return op();
    } catch (const graph::GraphError& e) {
        throw ProtocolError(ProtocolErrc::DivergedState, std::string("update does not fit local graph: ") + e.what());
    }
}

} // namespace

void apply_update(NodeRecord& node, const UpdateEvent& event)
{
    if (!event.changes_membership()) {
        node.fifo.push(event);
        node.last_sync = event.time;
        return;
    }
    if (!node.cycle) {
        throw ProtocolError(ProtocolErrc::NotAuthenticated, "membership update on a node without HC");
    }
    if (event.stage != node.graph.stage() + 1) {
        throw ProtocolError(ProtocolErrc::DivergedState, "update for stage " + std::to_string(event.stage) +
                                                             " on graph at stage " +
                                                             std::to_string(node.graph.stage()));
    }
    graph::NetworkGraph g;
    graph::HamiltonianCycle hc;
    bool self_deleted = false;
    if (const auto* ins = std::get_if<InsertionUpdate>(&event.body)) {
        std::vector<VertexId> extras;
        for (auto m : ins->group.members) {
            if (m != ins->splice.a && m != ins->splice.b) {
                extras.push_back(m);
            }
        }
        auto r = diverged_on_error([&] {
            return graph::splice_vertex(node.graph, *node.cycle, ins->vertex, ins->splice, extras);
        });
        g = std::move(r.graph);
        hc = std::move(r.cycle);
        if (node.vertex && *node.vertex == ins->authenticator) {
            node.last_exemption = event.time;
        }
    } else {
        const auto& del = std::get<DeletionUpdate>(event.body);
        auto r = diverged_on_error([&] { return graph::delete_vertex(node.graph, *node.cycle, del.vertex, 3); });
        g = std::move(r.graph);
        hc = std::move(r.cycle);
        self_deleted = node.vertex && *node.vertex == del.vertex;
        if (node.vertex && *node.vertex == del.reporter) {
            node.last_exemption = event.time;
        }
    }
    if (graph_digest(g) != event.graph_digest) {
        throw ProtocolError(ProtocolErrc::DivergedState,
                            "digest mismatch at stage " + std::to_string(event.stage));
    }
    node.graph = std::move(g);
    node.cycle = std::move(hc);
    node.fifo.push(event);
    if (self_deleted) {
        drop_vertex(node);
    }
}

const char* to_string(RejectReason r)
{
    switch (r) {
    case RejectReason::None: return "none";
    case RejectReason::Expired: return "expired";
    case RejectReason::Isolated: return "isolated";
    case RejectReason::NotMember: return "not-member";
    case RejectReason::Sybil: return "sybil";
    case RejectReason::GraphMismatch: return "graph-mismatch";
    }
    return "unknown";
}

AccessOutcome handle_access_control(const NodeRecord& authenticator, NodeRecord& supplicant,
                                    const AccessRequest& request, Rng& rng)
{
    require_authenticated(authenticator, "authenticator");
    const auto pending = transition(supplicant.state, LifeState::OnToAuthenticate);

    AccessOutcome out;
    out.offline_duration = request.now - supplicant.off_since;

    const auto reject = [&](RejectReason reason, LifeState next) {
        out.reason = reason;
        supplicant.state = transition(pending, next);
        if (next == LifeState::Deleted) {
            supplicant.vertex.reset();
            supplicant.cycle.reset();
        }
        if (reason == RejectReason::Isolated || reason == RejectReason::Sybil ||
            reason == RejectReason::GraphMismatch) {
            supplicant.isolated = true;
        }
        return out;
    };

    if (supplicant.vertex && contains(request.online, *supplicant.vertex)) {
        return reject(RejectReason::Sybil, LifeState::Off);
    }
    if (supplicant.off_since <= request.now - request.threshold) {
        return reject(RejectReason::Expired, LifeState::Deleted);
    }
    if (!supplicant.vertex || !authenticator.graph.has_vertex(*supplicant.vertex)) {
        return reject(RejectReason::NotMember, LifeState::Deleted);
    }
    const auto stale_stage = supplicant.graph.stage();
    auto gap = authenticator.fifo.gap_since(stale_stage);
    if (!gap) {
        throw ProtocolError(ProtocolErrc::StaleBeyondFifo,
                            "stage " + std::to_string(stale_stage) + " predates queue base " +
                                std::to_string(authenticator.fifo.base_stage()));
    }
    const bool removed_meanwhile = std::any_of(gap->begin(), gap->end(), [&](const UpdateEvent& e) {
        const auto* del = std::get_if<DeletionUpdate>(&e.body);
        return del && del->vertex == *supplicant.vertex;
    });
    if (removed_meanwhile) {
        return reject(RejectReason::NotMember, LifeState::Deleted);
    }
    const auto expected = authenticator.fifo.digest_at(stale_stage);
    if (!expected || *expected != graph_digest(supplicant.graph)) {
        return reject(RejectReason::GraphMismatch, LifeState::Off);
    }

    std::optional<zkp::Witness> witness;
    if (supplicant.cycle && graph::verify_cycle(supplicant.graph, *supplicant.cycle)) {
        witness = zkp::Witness{supplicant.graph, *supplicant.cycle};
    }
    out.transcript = zkp::run_protocol(witness, supplicant.graph, request.rounds, rng);
    if (!out.transcript->accepted) {
        return reject(RejectReason::Isolated, LifeState::Off);
    }

    supplicant.state = pending;
    if (!witness) {
        // A cheater that slipped through cannot splice without HC_t; it
        // only learns the public graph.
        supplicant.graph = authenticator.graph;
        supplicant.cycle.reset();
    } else {
        for (const auto& e : *gap) {
            apply_update(supplicant, e);
        }
    }
    if (supplicant.graph != authenticator.graph || (witness && supplicant.cycle != authenticator.cycle)) {
        throw ProtocolError(ProtocolErrc::DivergedState, "replay did not reach the authenticator's state");
    }
    out.replayed = gap->size();
    supplicant.fifo = authenticator.fifo;
    supplicant.state = transition(pending, LifeState::ReInserted);
    supplicant.last_seen_stage = supplicant.graph.stage();
    supplicant.last_sync = authenticator.last_sync;
    supplicant.isolated = false;
    out.status = AccessStatus::Admitted;
    return out;
}

std::optional<ProofOfLifeAction> proof_of_life_tick(const NodeRecord& node, double now, double threshold, Rng& rng)
{
    if (!is_authenticated(node) || exemption_check(node, now, threshold)) {
        return std::nullopt;
    }
    if (now - node.last_sync <= threshold) {
        return std::nullopt;
    }
    return ProofOfLifeAction{uniform_real(rng, 0.0, threshold / 10.0)};
}

RosterDecision conclude_proof_of_life(NodeRecord& initiator, std::span<const VertexId> responders, double now)
{
    require_authenticated(initiator, "initiator");
    std::vector<VertexId> proofs;
    for (auto v : responders) {
        if (v != *initiator.vertex && initiator.graph.has_vertex(v)) {
            proofs.push_back(v);
        }
    }
    std::sort(proofs.begin(), proofs.end());
    proofs.erase(std::unique(proofs.begin(), proofs.end()), proofs.end());
    if (!quorum_reached(proofs.size(), initiator.graph.order())) {
        initiator.last_sync = now;
        return {};
    }
    return {true, make_event(initiator.graph, now, RosterUpdate{*initiator.vertex, std::move(proofs)})};
}

bool exemption_check(const NodeRecord& node, double now, double threshold)
{
    return node.last_exemption && now - *node.last_exemption < threshold;
}

std::vector<VertexId> prune_dead_nodes(const NodeRecord& node, double now, double threshold, std::size_t n_min)
{
    std::vector<VertexId> dead;
    for (auto v : node.graph.vertices()) {
        const auto seen = node.fifo.last_proof(v);
        if (!seen || *seen <= now - threshold) {
            dead.push_back(v);
        }
    }
    const auto floor = std::max<std::size_t>(n_min, 3);
    if (!dead.empty() && node.graph.order() - dead.size() < floor) {
        throw graph::GraphError(graph::GraphErrc::NetworkTooSmall,
                                "pruning " + std::to_string(dead.size()) + " of " +
                                    std::to_string(node.graph.order()) + " vertices");
    }
    return dead;
}

UpdateEvent make_deletion(const NodeRecord& reporter, VertexId victim, double now, std::size_t n_min)
{
    require_authenticated(reporter, "reporter");
    auto d = graph::delete_vertex(reporter.graph, *reporter.cycle, victim, n_min);
    return make_event(d.graph, now, DeletionUpdate{victim, *reporter.vertex});
}

} // namespace slcm::protocol
