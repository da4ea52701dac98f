#pragma once

#include "slcm/graph/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace slcm::graph {

/// Cyclic ordering of distinct vertices, kept in canonical form: it starts at
/// the smallest id and continues towards the smaller of that id's two cycle
/// neighbours. Whether the ordering is actually a Hamiltonian cycle of some
/// graph is checked by `verify_cycle`, not by the type.
class HamiltonianCycle {
public:
    HamiltonianCycle() = default;

    /// Throws `InvalidCycle` for fewer than three or repeated vertices.
    explicit HamiltonianCycle(std::vector<VertexId> order);

    std::span<const VertexId> order() const noexcept { return order_; }
    std::size_t size() const noexcept { return order_.size(); }
    bool empty() const noexcept { return order_.empty(); }

    bool contains(VertexId v) const;

    /// The two vertices adjacent to `v` on the cycle (predecessor, successor).
    std::pair<VertexId, VertexId> neighbors(VertexId v) const;
    bool adjacent(VertexId u, VertexId v) const;

    std::vector<Edge> edges() const;

    bool operator==(const HamiltonianCycle&) const = default;

private:
    std::size_t position_of(VertexId v) const;

    std::vector<VertexId> order_;
};

} // namespace slcm::graph
