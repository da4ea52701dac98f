#pragma once

#include "slcm/graph/hamiltonian_cycle.hpp"
#include "slcm/graph/network_graph.hpp"
#include "slcm/graph/permutation.hpp"

#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

namespace slcm::test {

inline graph::VertexId V(std::uint32_t v)
{
    return graph::VertexId{v};
}

inline std::vector<graph::VertexId> ids(std::initializer_list<std::uint32_t> values)
{
    std::vector<graph::VertexId> out;
    for (auto v : values) {
        out.push_back(V(v));
    }
    return out;
}

inline std::vector<graph::VertexId> range_ids(std::uint32_t first, std::uint32_t last)
{
    std::vector<graph::VertexId> out;
    for (auto v = first; v <= last; ++v) {
        out.push_back(V(v));
    }
    return out;
}

inline graph::NetworkGraph make_graph(std::initializer_list<std::uint32_t> vertices,
                                      std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> edges,
                                      std::uint64_t stage = 0)
{
    std::vector<graph::Edge> es;
    for (auto [a, b] : edges) {
        es.push_back(graph::make_edge(V(a), V(b)));
    }
    return graph::NetworkGraph(stage, ids(vertices), es);
}

inline graph::HamiltonianCycle cycle(std::initializer_list<std::uint32_t> order)
{
    return graph::HamiltonianCycle(ids(order));
}

inline graph::Permutation perm(std::initializer_list<std::pair<std::uint32_t, std::uint32_t>> pairs)
{
    std::map<graph::VertexId, graph::VertexId> m;
    for (auto [a, b] : pairs) {
        m.emplace(V(a), V(b));
    }
    return graph::Permutation(std::move(m));
}

/// Plain cycle graph 1-2-...-n-1.
inline graph::NetworkGraph ring(std::uint32_t n)
{
    std::vector<graph::Edge> es;
    for (std::uint32_t i = 1; i <= n; ++i) {
        es.push_back(graph::make_edge(V(i), V(i % n + 1)));
    }
    return graph::NetworkGraph(0, range_ids(1, n), es);
}

inline graph::HamiltonianCycle ring_cycle(std::uint32_t n)
{
    return graph::HamiltonianCycle(range_ids(1, n));
}

} // namespace slcm::test
