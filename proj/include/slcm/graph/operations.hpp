#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/graph/hamiltonian_cycle.hpp"
#include "slcm/graph/network_graph.hpp"
#include "slcm/graph/permutation.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace slcm::graph {

/// Joint cycle HC_0: the participants' permutations are composed in list
/// order (the first one is applied first) and the composite Π yields the
/// cyclic order Π(v_1), Π(v_2), ..., Π(v_n) over the ascending domain.
HamiltonianCycle generate_initial_cycle(std::span<const Permutation> participant_permutations);

/// Completes HC_0 into G_0 with exactly `edge_count` edges, every vertex
/// having degree 2m/n (its neighbour group). Random extras are rejection
/// sampled without replacement.
NetworkGraph complete_graph(const HamiltonianCycle& hc, std::size_t edge_count, Rng& rng);

bool verify_cycle(const NetworkGraph& g, const HamiltonianCycle& hc);

struct Insertion {
    NetworkGraph graph;
    HamiltonianCycle cycle;
    NeighborGroup group;
    Edge splice; // HC_t edge (v_j, v_k) the new vertex was placed on
};

/// Splices `new_id` between a random HC-adjacent pair and links it to
/// `group_size - 2` extra vertices that are pairwise non-adjacent on HC_t.
Insertion insert_vertex(const NetworkGraph& g, const HamiltonianCycle& hc, VertexId new_id,
                        std::size_t group_size, Rng& rng);

/// Deterministic half of `insert_vertex`; also used to replay a broadcast
/// insertion on another node's copy of the graph.
Insertion splice_vertex(const NetworkGraph& g, const HamiltonianCycle& hc, VertexId new_id, Edge splice,
                        std::span<const VertexId> extras);

struct Deletion {
    NetworkGraph graph;
    HamiltonianCycle cycle;
    Edge bypass;
};

/// Removes `id` and joins its two cycle neighbours. Throws `NetworkTooSmall`
/// when the result would have fewer than `max(min_vertices, 3)` vertices.
Deletion delete_vertex(const NetworkGraph& g, const HamiltonianCycle& hc, VertexId id,
                       std::size_t min_vertices = kDefaultMinVertices);

NetworkGraph permute_graph(const NetworkGraph& g, const Permutation& p);
HamiltonianCycle permute_cycle(const HamiltonianCycle& hc, const Permutation& p);

std::pair<NetworkGraph, HamiltonianCycle> apply_permutation(const NetworkGraph& g, const HamiltonianCycle& hc,
                                                            const Permutation& p);

inline constexpr std::size_t kBruteForceLimit = 12;

/// Exhaustive backtracking search; test oracle only.
std::optional<HamiltonianCycle> brute_force_find_cycle(const NetworkGraph& g);

} // namespace slcm::graph
