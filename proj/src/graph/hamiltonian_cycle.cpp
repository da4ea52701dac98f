#include "slcm/graph/hamiltonian_cycle.hpp"

#include <algorithm>
#include <sstream>

namespace slcm::graph {

HamiltonianCycle::HamiltonianCycle(std::vector<VertexId> order)
{
    if (order.size() < 3) {
        throw GraphError(GraphErrc::InvalidCycle, "a cycle needs at least three vertices");
    }
    std::vector<VertexId> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw GraphError(GraphErrc::InvalidCycle, "a cycle visits every vertex once");
    }

    const std::size_t n = order.size();
    const auto start = static_cast<std::size_t>(std::min_element(order.begin(), order.end()) - order.begin());
    const VertexId next = order[(start + 1) % n];
    const VertexId prev = order[(start + n - 1) % n];

    order_.reserve(n);
    if (next < prev) {
        for (std::size_t i = 0; i < n; ++i) {
            order_.push_back(order[(start + i) % n]);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            order_.push_back(order[(start + n - i) % n]);
        }
    }
}

std::size_t HamiltonianCycle::position_of(VertexId v) const
{
    auto it = std::find(order_.begin(), order_.end(), v);
    if (it == order_.end()) {
        std::ostringstream msg;
        msg << "vertex " << v << " is not on the cycle";
        throw GraphError(GraphErrc::UnknownId, msg.str());
    }
    return static_cast<std::size_t>(it - order_.begin());
}

bool HamiltonianCycle::contains(VertexId v) const
{
    return std::find(order_.begin(), order_.end(), v) != order_.end();
}

std::pair<VertexId, VertexId> HamiltonianCycle::neighbors(VertexId v) const
{
    const std::size_t n = order_.size();
    const std::size_t i = position_of(v);
    return {order_[(i + n - 1) % n], order_[(i + 1) % n]};
}

bool HamiltonianCycle::adjacent(VertexId u, VertexId v) const
{
    if (!contains(u) || !contains(v)) {
        return false;
    }
    auto [prev, next] = neighbors(u);
    return prev == v || next == v;
}

std::vector<Edge> HamiltonianCycle::edges() const
{
    std::vector<Edge> out;
    out.reserve(order_.size());
    for (std::size_t i = 0; i < order_.size(); ++i) {
        out.push_back(make_edge(order_[i], order_[(i + 1) % order_.size()]));
    }
    return out;
}

} // namespace slcm::graph
