#include "slcm/graph/operations.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace slcm::graph {

namespace {

constexpr int kCompletionAttempts = 1000;
constexpr int kExtrasAttempts = 100;

std::vector<VertexId> sorted_vertices(const HamiltonianCycle& hc)
{
    std::vector<VertexId> v(hc.order().begin(), hc.order().end());
    std::sort(v.begin(), v.end());
    return v;
}

} // namespace

HamiltonianCycle generate_initial_cycle(std::span<const Permutation> participant_permutations)
{
    if (participant_permutations.empty()) {
        throw GraphError(GraphErrc::MismatchedDomains, "no participant permutations");
    }
    const std::vector<VertexId> domain = participant_permutations.front().domain();
    if (domain.size() < 3) {
        throw GraphError(GraphErrc::FewerThanThreeVertices, "a Hamiltonian cycle needs at least three vertices");
    }
    Permutation product = participant_permutations.front();
    for (std::size_t i = 1; i < participant_permutations.size(); ++i) {
        if (!participant_permutations[i].same_domain(domain)) {
            throw GraphError(GraphErrc::MismatchedDomains, "participant permutations act on different vertex sets");
        }
        product = product.then(participant_permutations[i]);
    }

    std::vector<VertexId> order;
    order.reserve(domain.size());
    for (VertexId v : domain) {
        order.push_back(product(v));
    }
    return HamiltonianCycle(std::move(order));
}

NetworkGraph complete_graph(const HamiltonianCycle& hc, std::size_t edge_count, Rng& rng)
{
    const std::size_t n = hc.size();
    if (n < 3) {
        throw GraphError(GraphErrc::FewerThanThreeVertices, "cycle is empty");
    }
    const std::size_t max_edges = n * (n - 1) / 2;
    if (edge_count < n || edge_count > max_edges) {
        std::ostringstream msg;
        msg << "m=" << edge_count << " outside [" << n << ", " << max_edges << "] for n=" << n;
        throw GraphError(GraphErrc::InfeasibleDensity, msg.str());
    }
    if ((2 * edge_count) % n != 0) {
        std::ostringstream msg;
        msg << "2m/n is not an integer for m=" << edge_count << ", n=" << n;
        throw GraphError(GraphErrc::DegreeNotIntegral, msg.str());
    }
    const std::size_t degree = 2 * edge_count / n;
    if (degree > n - 1) {
        throw GraphError(GraphErrc::InfeasibleDensity, "neighbour group larger than n-1");
    }

    const std::vector<VertexId> vertices = sorted_vertices(hc);
    const std::vector<Edge> cycle_edges = hc.edges();

    for (int attempt = 0; attempt < kCompletionAttempts; ++attempt) {
        std::set<Edge> edges(cycle_edges.begin(), cycle_edges.end());
        std::vector<std::size_t> deficit(n, degree - 2);
        std::vector<std::size_t> open;
        for (std::size_t i = 0; i < n; ++i) {
            if (deficit[i] > 0) {
                open.push_back(i);
            }
        }

        bool stuck = false;
        while (!open.empty()) {
            const std::size_t u = open[uniform_index(rng, open.size())];
            std::vector<std::size_t> candidates;
            for (std::size_t w : open) {
                if (w != u && !edges.contains(make_edge(vertices[u], vertices[w]))) {
                    candidates.push_back(w);
                }
            }
            if (candidates.empty()) {
                stuck = true;
                break;
            }
            const std::size_t w = candidates[uniform_index(rng, candidates.size())];
            edges.insert(make_edge(vertices[u], vertices[w]));
            --deficit[u];
            --deficit[w];
            std::erase_if(open, [&](std::size_t i) { return deficit[i] == 0; });
        }
        if (!stuck) {
            return NetworkGraph(0, vertices, std::vector<Edge>(edges.begin(), edges.end()));
        }
    }
    throw GraphError(GraphErrc::InfeasibleDensity, "could not complete the cycle to a regular graph");
}

bool verify_cycle(const NetworkGraph& g, const HamiltonianCycle& hc)
{
    if (hc.size() < 3 || hc.size() != g.order()) {
        return false;
    }
    const auto order = hc.order();
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (!g.has_vertex(order[i])) {
            return false;
        }
        if (!g.has_edge(order[i], order[(i + 1) % order.size()])) {
            return false;
        }
    }
    return true;
}

Insertion splice_vertex(const NetworkGraph& g, const HamiltonianCycle& hc, VertexId new_id, Edge splice,
                        std::span<const VertexId> extras)
{
    if (g.has_vertex(new_id)) {
        std::ostringstream msg;
        msg << "vertex " << new_id << " already exists";
        throw GraphError(GraphErrc::DuplicateId, msg.str());
    }
    if (!hc.adjacent(splice.a, splice.b)) {
        throw GraphError(GraphErrc::InvalidEdge, "splice pair is not adjacent on the cycle");
    }

    std::vector<VertexId> members{splice.a, splice.b};
    for (VertexId x : extras) {
        if (!g.has_vertex(x)) {
            throw GraphError(GraphErrc::UnknownId, "extra neighbour is not in the graph");
        }
        members.push_back(x);
    }
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw GraphError(GraphErrc::InvalidEdge, "neighbour group repeats a vertex");
    }

    std::vector<VertexId> vertices(g.vertices().begin(), g.vertices().end());
    vertices.push_back(new_id);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    for (VertexId x : members) {
        edges.push_back(make_edge(new_id, x));
    }

    std::vector<VertexId> order;
    order.reserve(hc.size() + 1);
    const auto old = hc.order();
    for (std::size_t i = 0; i < old.size(); ++i) {
        order.push_back(old[i]);
        const VertexId next = old[(i + 1) % old.size()];
        if (make_edge(old[i], next) == make_edge(splice.a, splice.b)) {
            order.push_back(new_id);
        }
    }

    return Insertion{NetworkGraph(g.stage() + 1, std::move(vertices), std::move(edges)),
                     HamiltonianCycle(std::move(order)), NeighborGroup{new_id, std::move(members)},
                     make_edge(splice.a, splice.b)};
}

Insertion insert_vertex(const NetworkGraph& g, const HamiltonianCycle& hc, VertexId new_id,
                        std::size_t group_size, Rng& rng)
{
    if (g.has_vertex(new_id)) {
        std::ostringstream msg;
        msg << "vertex " << new_id << " already exists";
        throw GraphError(GraphErrc::DuplicateId, msg.str());
    }
    if (g.order() < 3 || hc.size() != g.order()) {
        throw GraphError(GraphErrc::FewerThanThreeVertices, "insertion needs a cycle of at least three vertices");
    }
    if (group_size < 2) {
        throw GraphError(GraphErrc::InfeasibleDensity, "neighbour group must contain both splice neighbours");
    }

    const auto order = hc.order();
    const VertexId vj = order[uniform_index(rng, order.size())];
    const auto [prev, next] = hc.neighbors(vj);
    const VertexId vk = uniform_index(rng, 2) == 0 ? prev : next;

    std::vector<VertexId> pool;
    for (VertexId v : g.vertices()) {
        if (v != vj && v != vk) {
            pool.push_back(v);
        }
    }
    const std::size_t wanted = group_size - 2;
    if (wanted > pool.size()) {
        throw GraphError(GraphErrc::InsufficientNonAdjacentCandidates, "not enough vertices for the neighbour group");
    }

    for (int attempt = 0; attempt < kExtrasAttempts; ++attempt) {
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<VertexId> chosen;
        for (VertexId c : pool) {
            if (chosen.size() == wanted) {
                break;
            }
            const bool clash =
                std::any_of(chosen.begin(), chosen.end(), [&](VertexId w) { return hc.adjacent(c, w); });
            if (!clash) {
                chosen.push_back(c);
            }
        }
        if (chosen.size() == wanted) {
            return splice_vertex(g, hc, new_id, make_edge(vj, vk), chosen);
        }
    }
    std::ostringstream msg;
    msg << "no " << wanted << " pairwise cycle-non-adjacent vertices found after " << kExtrasAttempts << " attempts";
    throw GraphError(GraphErrc::InsufficientNonAdjacentCandidates, msg.str());
}

Deletion delete_vertex(const NetworkGraph& g, const HamiltonianCycle& hc, VertexId id, std::size_t min_vertices)
{
    if (!g.has_vertex(id) || !hc.contains(id)) {
        std::ostringstream msg;
        msg << "vertex " << id << " is not live";
        throw GraphError(GraphErrc::UnknownId, msg.str());
    }
    const std::size_t floor = std::max<std::size_t>(min_vertices, 3);
    if (g.order() - 1 < floor) {
        std::ostringstream msg;
        msg << "deleting " << id << " leaves " << g.order() - 1 << " vertices, below " << floor;
        throw GraphError(GraphErrc::NetworkTooSmall, msg.str());
    }

    const auto [vj, vk] = hc.neighbors(id);

    std::vector<VertexId> vertices;
    for (VertexId v : g.vertices()) {
        if (v != id) {
            vertices.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        if (e.a != id && e.b != id) {
            edges.push_back(e);
        }
    }
    edges.push_back(make_edge(vj, vk));

    std::vector<VertexId> order;
    for (VertexId v : hc.order()) {
        if (v != id) {
            order.push_back(v);
        }
    }
    return Deletion{NetworkGraph(g.stage() + 1, std::move(vertices), std::move(edges)),
                    HamiltonianCycle(std::move(order)), make_edge(vj, vk)};
}

NetworkGraph permute_graph(const NetworkGraph& g, const Permutation& p)
{
    if (!p.same_domain(g.vertices())) {
        throw GraphError(GraphErrc::DomainMismatch, "permutation does not act on the graph's vertex set");
    }
    std::vector<Edge> edges;
    edges.reserve(g.size());
    for (const Edge& e : g.edges()) {
        edges.push_back(make_edge(p(e.a), p(e.b)));
    }
    return NetworkGraph(g.stage(), std::vector<VertexId>(g.vertices().begin(), g.vertices().end()),
                        std::move(edges));
}

HamiltonianCycle permute_cycle(const HamiltonianCycle& hc, const Permutation& p)
{
    if (!p.same_domain(sorted_vertices(hc))) {
        throw GraphError(GraphErrc::DomainMismatch, "permutation does not act on the cycle's vertex set");
    }
    std::vector<VertexId> order;
    order.reserve(hc.size());
    for (VertexId v : hc.order()) {
        order.push_back(p(v));
    }
    return HamiltonianCycle(std::move(order));
}

std::pair<NetworkGraph, HamiltonianCycle> apply_permutation(const NetworkGraph& g, const HamiltonianCycle& hc,
                                                            const Permutation& p)
{
    return {permute_graph(g, p), permute_cycle(hc, p)};
}

namespace {

bool extend_path(const NetworkGraph& g, std::vector<VertexId>& path, std::set<VertexId>& used)
{
    if (path.size() == g.order()) {
        return g.has_edge(path.back(), path.front());
    }
    for (VertexId next : g.neighbors(path.back())) {
        if (used.contains(next)) {
            continue;
        }
        path.push_back(next);
        used.insert(next);
        if (extend_path(g, path, used)) {
            return true;
        }
        used.erase(next);
        path.pop_back();
    }
    return false;
}

} // namespace

std::optional<HamiltonianCycle> brute_force_find_cycle(const NetworkGraph& g)
{
    if (g.order() > kBruteForceLimit) {
        std::ostringstream msg;
        msg << "brute force search limited to " << kBruteForceLimit << " vertices, got " << g.order();
        throw GraphError(GraphErrc::TooLarge, msg.str());
    }
    if (g.order() < 3) {
        return std::nullopt;
    }
    std::vector<VertexId> path{g.vertices().front()};
    std::set<VertexId> used{path.front()};
    if (extend_path(g, path, used)) {
        return HamiltonianCycle(std::move(path));
    }
    return std::nullopt;
}

} // namespace slcm::graph
