#include "slcm/zkp/protocol.hpp"

#include "slcm/graph/operations.hpp"

#include <algorithm>
#include <set>

namespace slcm::zkp {

using graph::HamiltonianCycle;
using graph::NetworkGraph;
using graph::Permutation;
using graph::VertexId;

Challenge draw_challenge(Rng& rng)
{
    return bernoulli(rng, 0.5) ? Challenge::RevealCycle : Challenge::RevealIsomorphism;
}

Challenge challenge_of(const RoundResponse& response)
{
    return std::holds_alternative<IsomorphismOpening>(response) ? Challenge::RevealIsomorphism
                                                                : Challenge::RevealCycle;
}

RoundState::RoundState(Permutation permutation, NetworkGraph permuted_graph, HamiltonianCycle permuted_cycle,
                       Bytes salt_graph, Bytes salt_cycle)
    : permutation_(std::move(permutation)),
      permuted_graph_(std::move(permuted_graph)),
      permuted_cycle_(std::move(permuted_cycle)),
      salt_graph_(std::move(salt_graph)),
      salt_cycle_(std::move(salt_cycle))
{
}

CommitmentPair RoundState::commitments() const
{
    return {commit(encode_graph(permuted_graph_), salt_graph_), commit(encode_cycle(permuted_cycle_), salt_cycle_)};
}

namespace {

ProverCommitment seal(Permutation p, NetworkGraph g, HamiltonianCycle hc, Rng& rng)
{
    Bytes r1 = random_salt(rng);
    Bytes r2 = random_salt(rng);
    RoundState state(std::move(p), std::move(g), std::move(hc), std::move(r1), std::move(r2));
    auto pair = state.commitments();
    return {std::move(state), pair};
}

std::vector<VertexId> shuffled(std::span<const VertexId> vs, Rng& rng)
{
    std::vector<VertexId> out(vs.begin(), vs.end());
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

// Random graph on the same vertex set with the same edge count, built around
// a random cycle the forger knows.
std::pair<NetworkGraph, HamiltonianCycle> fake_graph(const NetworkGraph& public_g, Rng& rng)
{
    const auto order = shuffled(public_g.vertices(), rng);
    HamiltonianCycle hc(order);
    std::set<graph::Edge> edges;
    for (const auto& e : hc.edges()) {
        edges.insert(e);
    }
    const auto n = order.size();
    const auto max_edges = n * (n - 1) / 2;
    const auto target = std::min(std::max(public_g.size(), edges.size()), max_edges);
    while (edges.size() < target) {
        const auto u = order[uniform_index(rng, n)];
        const auto v = order[uniform_index(rng, n)];
        if (u != v) {
            edges.insert(graph::make_edge(u, v));
        }
    }
    NetworkGraph g(public_g.stage(), std::vector<VertexId>(public_g.vertices().begin(), public_g.vertices().end()),
                   std::vector<graph::Edge>(edges.begin(), edges.end()));
    return {std::move(g), std::move(hc)};
}

// A cyclic order over the vertices that is not a Hamiltonian cycle of `g`.
// Falls back to an arbitrary order when every order is one (complete graphs).
HamiltonianCycle bogus_cycle(const NetworkGraph& g, Rng& rng)
{
    constexpr int kAttempts = 1000;
    auto order = shuffled(g.vertices(), rng);
    for (int i = 0; i < kAttempts; ++i) {
        HamiltonianCycle hc(order);
        if (!graph::verify_cycle(g, hc)) {
            return hc;
        }
        std::shuffle(order.begin(), order.end(), rng);
    }
    return HamiltonianCycle(order);
}

} // namespace

ProverCommitment prover_commit(const NetworkGraph& g, const HamiltonianCycle& hc, Rng& rng)
{
    if (!graph::verify_cycle(g, hc)) {
        throw ZkpError(ZkpErrc::InvalidWitness, "cycle is not a Hamiltonian cycle of the graph");
    }
    auto p = Permutation::random(g.vertices(), rng);
    auto [pg, phc] = graph::apply_permutation(g, hc, p);
    return seal(std::move(p), std::move(pg), std::move(phc), rng);
}

const char* to_string(CheatStrategy s)
{
    switch (s) {
    case CheatStrategy::FakeGraph: return "fake-graph";
    case CheatStrategy::IsomorphWithoutCycle: return "isomorph-without-cycle";
    case CheatStrategy::CoinFlip: return "coin-flip";
    }
    return "unknown";
}

ProverCommitment forge_commit(const NetworkGraph& public_g, CheatStrategy strategy, Rng& rng)
{
    if (strategy == CheatStrategy::CoinFlip) {
        strategy = bernoulli(rng, 0.5) ? CheatStrategy::FakeGraph : CheatStrategy::IsomorphWithoutCycle;
    }
    auto p = Permutation::random(public_g.vertices(), rng);
    if (strategy == CheatStrategy::FakeGraph) {
        auto [g, hc] = fake_graph(public_g, rng);
        return seal(std::move(p), std::move(g), std::move(hc), rng);
    }
    auto pg = graph::permute_graph(public_g, p);
    auto hc = bogus_cycle(pg, rng);
    return seal(std::move(p), std::move(pg), std::move(hc), rng);
}

RoundResponse prover_respond(RoundState& state, Challenge c)
{
    if (state.consumed_) {
        throw ZkpError(ZkpErrc::StateAlreadyConsumed, "round state already answered a challenge");
    }
    state.consumed_ = true;
    if (c == Challenge::RevealIsomorphism) {
        return IsomorphismOpening{state.permutation_, state.salt_graph_};
    }
    return CycleOpening{state.permuted_graph_, state.permuted_cycle_, state.salt_cycle_, state.salt_graph_};
}

bool verifier_check(const NetworkGraph& public_g, const CommitmentPair& commitments, Challenge c,
                    const RoundResponse& response)
{
    if (challenge_of(response) != c) {
        throw ZkpError(ZkpErrc::VariantMismatch, "response branch does not match the challenge");
    }
    try {
        if (const auto* iso = std::get_if<IsomorphismOpening>(&response)) {
            if (!iso->permutation.same_domain(public_g.vertices())) {
                return false;
            }
            const auto pg = graph::permute_graph(public_g, iso->permutation);
            return commit(encode_graph(pg), iso->salt_graph) == commitments.graph;
        }
        const auto& open = std::get<CycleOpening>(response);
        if (commit(encode_graph(open.permuted_graph), open.salt_graph) != commitments.graph ||
            commit(encode_cycle(open.permuted_cycle), open.salt_cycle) != commitments.cycle) {
            return false;
        }
        const auto pv = open.permuted_graph.vertices();
        const auto gv = public_g.vertices();
        if (!std::equal(pv.begin(), pv.end(), gv.begin(), gv.end()) ||
            open.permuted_graph.size() != public_g.size()) {
            return false;
        }
        return graph::verify_cycle(open.permuted_graph, open.permuted_cycle);
    } catch (const ZkpError& e) {
        if (e.code() == ZkpErrc::SaltTooShort) {
            return false;
        }
        throw;
    } catch (const graph::GraphError&) {
        return false;
    }
}

ZkpTranscript run_protocol(const std::optional<Witness>& prover_secret, const NetworkGraph& public_g,
                           std::size_t rounds, Rng& rng, CheatStrategy cheat)
{
    if (rounds == 0) {
        throw ZkpError(ZkpErrc::InvalidRoundCount, "at least one round is required");
    }
    ZkpTranscript t;
    t.rounds.reserve(rounds);
    t.accepted = true;
    for (std::size_t j = 0; j < rounds; ++j) {
        auto pc = prover_secret ? prover_commit(prover_secret->graph, prover_secret->cycle, rng)
                                : forge_commit(public_g, cheat, rng);
        const auto c = draw_challenge(rng);
        auto response = prover_respond(pc.state, c);
        const bool ok = verifier_check(public_g, pc.commitments, c, response);
        t.accepted = t.accepted && ok;
        t.rounds.push_back({pc.commitments, c, std::move(response), ok});
    }
    return t;
}

std::size_t wire_size(const RoundResponse& response)
{
    if (const auto* iso = std::get_if<IsomorphismOpening>(&response)) {
        return 4 + 8 * iso->permutation.size() + iso->salt_graph.size();
    }
    const auto& open = std::get<CycleOpening>(response);
    return encode_graph(open.permuted_graph).size() + encode_cycle(open.permuted_cycle).size() +
           open.salt_cycle.size() + open.salt_graph.size();
}

} // namespace slcm::zkp
