#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/graph/hamiltonian_cycle.hpp"
#include "slcm/graph/network_graph.hpp"
#include "slcm/graph/operations.hpp"
#include "slcm/protocol/errors.hpp"
#include "slcm/protocol/life_state.hpp"
#include "slcm/protocol/threshold.hpp"
#include "slcm/protocol/update_queue.hpp"
#include "slcm/zkp/protocol.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace slcm::protocol {

/// Physical device identity, stable across vertex reassignments.
struct DeviceId {
    std::uint32_t value{0};

    constexpr auto operator<=>(const DeviceId&) const = default;
};

struct NodeRecord {
    DeviceId device;
    std::optional<VertexId> vertex;
    LifeState state{LifeState::NonLegitimate};
    graph::NetworkGraph graph;
    std::optional<graph::HamiltonianCycle> cycle;
    UpdateQueue fifo;

    double off_since{0.0};            // when the node left OnAuthenticated
    std::uint64_t last_seen_stage{0}; // stage of `graph` at that moment
    double last_sync{0.0};            // clock base, reset by each committed roster
    std::optional<double> last_exemption;
    bool isolated{false};
};

struct InitOptions {
    std::size_t n_min{graph::kDefaultMinVertices};
    double retention{0.0};
    double now{0.0};
};

/// Founders keyed by vertex id; device ids equal vertex ids. Every founder
/// draws its permutation from its own stream of `seed`.
std::map<VertexId, NodeRecord> initialize_network(std::span<const VertexId> founders, std::size_t edge_count,
                                                  std::uint64_t seed, const InitOptions& options = {});

/// Lowest positive id not in `live`.
VertexId next_vertex_id(std::span<const VertexId> live);

/// Fewer than n/2 answers aborts; exactly n/2 proceeds.
bool quorum_reached(std::size_t answers, std::size_t n);

enum class InsertionStatus { Inserted, Aborted, Denied };

struct InsertionRequest {
    double now{0.0};
    std::size_t group_size{4};
    std::optional<VertexId> claimed_id; // id the supplicant asks for, if any
};

struct InsertionOutcome {
    InsertionStatus status{InsertionStatus::Aborted};
    std::optional<VertexId> vertex;
    std::optional<UpdateEvent> update;
};

/// Authenticator side of an insertion. A claimed id that is already live is
/// a Sybil attempt and yields `Denied`. On success the update has not yet
/// been applied anywhere, including on the authenticator.
InsertionOutcome handle_insertion(const NodeRecord& authenticator, std::size_t quorum_answers,
                                  const InsertionRequest& request, Rng& rng);

/// Hands G_{t+1}, HC_{t+1} and the queue to a freshly inserted supplicant.
void admit_supplicant(NodeRecord& supplicant, const NodeRecord& authenticator, VertexId vertex, double now);

/// Replays one broadcast update onto a node's copy of the state. Membership
/// events must extend the node's current stage by exactly one and land on
/// the advertised digest; otherwise `DivergedState`.
void apply_update(NodeRecord& node, const UpdateEvent& event);

enum class AccessStatus { Admitted, Rejected };

enum class RejectReason { None, Expired, Isolated, NotMember, Sybil, GraphMismatch };

const char* to_string(RejectReason r);

struct AccessRequest {
    double now{0.0};
    double threshold{0.0};
    std::size_t rounds{zkp::kDefaultRounds};
    std::span<const VertexId> online; // vertices currently OnAuthenticated
};

struct AccessOutcome {
    AccessStatus status{AccessStatus::Rejected};
    RejectReason reason{RejectReason::None};
    std::optional<zkp::ZkpTranscript> transcript;
    std::size_t replayed{0};
    double offline_duration{0.0};
};

/// Authenticator checks a returning supplicant, runs the ZKP over its stale
/// G_t and replays the queue gap. Mutates only the supplicant.
AccessOutcome handle_access_control(const NodeRecord& authenticator, NodeRecord& supplicant,
                                    const AccessRequest& request, Rng& rng);

/// Defer before initiating a proof-of-life round.
struct ProofOfLifeAction {
    double defer{0.0};
};

std::optional<ProofOfLifeAction> proof_of_life_tick(const NodeRecord& node, double now, double threshold, Rng& rng);

struct RosterDecision {
    bool committed{false};
    std::optional<UpdateEvent> update;
};

/// Closes a round started by `initiator` with the responders it heard from.
/// Cancelled rounds reset the initiator's clock.
RosterDecision conclude_proof_of_life(NodeRecord& initiator, std::span<const VertexId> responders, double now);

bool exemption_check(const NodeRecord& node, double now, double threshold);

/// Live vertices without a proof of life in (now - T, now]. Throws
/// `NetworkTooSmall` if removing them all would go below n_min.
std::vector<VertexId> prune_dead_nodes(const NodeRecord& node, double now, double threshold,
                                       std::size_t n_min = graph::kDefaultMinVertices);

/// Deletion update for `victim` as seen from `reporter`'s state.
UpdateEvent make_deletion(const NodeRecord& reporter, VertexId victim, double now,
                          std::size_t n_min = graph::kDefaultMinVertices);

} // namespace slcm::protocol
