#pragma once

#include "slcm/graph/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace slcm::graph {

/// Undirected simple graph G_t over vertex ids, tagged with its life-cycle
/// stage. Immutable once built; every operation returns a new value.
class NetworkGraph {
public:
    NetworkGraph() = default;

    /// Builds a graph from a vertex set and an edge list. Duplicate vertices
    /// and duplicate edges are merged; self-loops and edges touching unknown
    /// vertices throw `GraphError{InvalidEdge}`.
    NetworkGraph(std::uint64_t stage, std::vector<VertexId> vertices, std::vector<Edge> edges);

    std::uint64_t stage() const noexcept { return stage_; }
    std::size_t order() const noexcept { return vertices_.size(); }
    std::size_t size() const noexcept { return edges_.size(); }

    std::span<const VertexId> vertices() const noexcept { return vertices_; }
    std::span<const Edge> edges() const noexcept { return edges_; }

    bool has_vertex(VertexId v) const;
    bool has_edge(VertexId u, VertexId v) const;

    /// Sorted neighbours of `v`; throws `UnknownId` for a missing vertex.
    std::span<const VertexId> neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    NetworkGraph with_stage(std::uint64_t stage) const;

    bool operator==(const NetworkGraph&) const = default;

private:
    std::size_t index_of(VertexId v) const;

    std::uint64_t stage_{0};
    std::vector<VertexId> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<VertexId>> adjacency_;
};

} // namespace slcm::graph
