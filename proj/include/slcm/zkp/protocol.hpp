#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/graph/hamiltonian_cycle.hpp"
#include "slcm/graph/network_graph.hpp"
#include "slcm/graph/permutation.hpp"
#include "slcm/zkp/commitment.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace slcm::zkp {

/// Verifier's challenge bit b_j.
enum class Challenge : std::uint8_t {
    RevealIsomorphism = 0,
    RevealCycle = 1,
};

Challenge draw_challenge(Rng& rng);

struct CommitmentPair {
    Commitment graph; // h(Π_j(G) || r_1)
    Commitment cycle; // h(Π_j(HC) || r_2)

    bool operator==(const CommitmentPair&) const = default;
};

/// Opening for b = 0: the permutation and the graph salt. The verifier
/// recomputes Π_j(G) from its own copy of the public graph.
struct IsomorphismOpening {
    graph::Permutation permutation;
    Bytes salt_graph;
};

/// Opening for b = 1: the committed graph and cycle with both salts, never
/// the permutation.
struct CycleOpening {
    graph::NetworkGraph permuted_graph;
    graph::HamiltonianCycle permuted_cycle;
    Bytes salt_cycle;
    Bytes salt_graph;
};

using RoundResponse = std::variant<IsomorphismOpening, CycleOpening>;

Challenge challenge_of(const RoundResponse& response);

/// Prover-private data for one round. Single use.
class RoundState {
public:
    RoundState(graph::Permutation permutation, graph::NetworkGraph permuted_graph,
               graph::HamiltonianCycle permuted_cycle, Bytes salt_graph, Bytes salt_cycle);

    const graph::Permutation& permutation() const noexcept { return permutation_; }
    const graph::NetworkGraph& permuted_graph() const noexcept { return permuted_graph_; }
    const graph::HamiltonianCycle& permuted_cycle() const noexcept { return permuted_cycle_; }
    const Bytes& salt_graph() const noexcept { return salt_graph_; }
    const Bytes& salt_cycle() const noexcept { return salt_cycle_; }
    bool consumed() const noexcept { return consumed_; }

    CommitmentPair commitments() const;

private:
    friend RoundResponse prover_respond(RoundState& state, Challenge c);

    graph::Permutation permutation_;
    graph::NetworkGraph permuted_graph_;
    graph::HamiltonianCycle permuted_cycle_;
    Bytes salt_graph_;
    Bytes salt_cycle_;
    bool consumed_{false};
};

struct ProverCommitment {
    RoundState state;
    CommitmentPair commitments;
};

/// Honest prover: fresh Π_j, salts, and the commitment pair. Throws
/// `InvalidWitness` if `hc` is not a Hamiltonian cycle of `g`.
ProverCommitment prover_commit(const graph::NetworkGraph& g, const graph::HamiltonianCycle& hc, Rng& rng);

/// Blind cheating strategies used to measure soundness.
enum class CheatStrategy {
    FakeGraph,            // commits to an unrelated graph with a known cycle; survives b = 1 only
    IsomorphWithoutCycle, // commits to a true isomorph and a bogus cycle; survives b = 0 only
    CoinFlip,             // picks one of the two per round
};

const char* to_string(CheatStrategy s);

ProverCommitment forge_commit(const graph::NetworkGraph& public_g, CheatStrategy strategy, Rng& rng);

/// Throws `StateAlreadyConsumed` on a second call for the same round.
RoundResponse prover_respond(RoundState& state, Challenge c);

/// Throws `VariantMismatch` when the response branch disagrees with `c`;
/// every other defect yields false.
bool verifier_check(const graph::NetworkGraph& public_g, const CommitmentPair& commitments, Challenge c,
                    const RoundResponse& response);

struct RoundRecord {
    CommitmentPair commitments;
    Challenge challenge;
    RoundResponse response;
    bool verdict;
};

struct ZkpTranscript {
    std::vector<RoundRecord> rounds;
    bool accepted{false};

    std::size_t round_count() const noexcept { return rounds.size(); }
};

struct Witness {
    graph::NetworkGraph graph;
    graph::HamiltonianCycle cycle;
};

inline constexpr std::size_t kDefaultRounds = 20;

/// Runs `rounds` commit/challenge/response rounds against `public_g`. With
/// no witness the prover follows `cheat`. All rounds are executed and
/// recorded; the session is accepted iff every round verified.
ZkpTranscript run_protocol(const std::optional<Witness>& prover_secret, const graph::NetworkGraph& public_g,
                           std::size_t rounds, Rng& rng, CheatStrategy cheat = CheatStrategy::CoinFlip);

/// Bytes a response occupies on the wire (encodings plus salts).
std::size_t wire_size(const RoundResponse& response);

} // namespace slcm::zkp
