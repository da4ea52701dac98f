#include "slcm/graph/network_graph.hpp"

#include <algorithm>
#include <sstream>

namespace slcm::graph {

Edge make_edge(VertexId u, VertexId v)
{
    return u < v ? Edge{u, v} : Edge{v, u};
}

const char* to_string(GraphErrc code)
{
    switch (code) {
    case GraphErrc::FewerThanThreeVertices: return "FewerThanThreeVertices";
    case GraphErrc::MismatchedDomains: return "MismatchedDomains";
    case GraphErrc::InfeasibleDensity: return "InfeasibleDensity";
    case GraphErrc::DegreeNotIntegral: return "DegreeNotIntegral";
    case GraphErrc::DuplicateId: return "DuplicateId";
    case GraphErrc::InsufficientNonAdjacentCandidates: return "InsufficientNonAdjacentCandidates";
    case GraphErrc::UnknownId: return "UnknownId";
    case GraphErrc::NetworkTooSmall: return "NetworkTooSmall";
    case GraphErrc::DomainMismatch: return "DomainMismatch";
    case GraphErrc::NotBijective: return "NotBijective";
    case GraphErrc::TooLarge: return "TooLarge";
    case GraphErrc::InvalidEdge: return "InvalidEdge";
    case GraphErrc::InvalidCycle: return "InvalidCycle";
    case GraphErrc::MalformedInput: return "MalformedInput";
    }
    return "unknown";
}

GraphError::GraphError(GraphErrc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

NetworkGraph::NetworkGraph(std::uint64_t stage, std::vector<VertexId> vertices, std::vector<Edge> edges)
    : stage_(stage), vertices_(std::move(vertices))
{
    std::sort(vertices_.begin(), vertices_.end());
    vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

    edges_.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.a == e.b) {
            std::ostringstream msg;
            msg << "self-loop on " << e.a;
            throw GraphError(GraphErrc::InvalidEdge, msg.str());
        }
        if (!std::binary_search(vertices_.begin(), vertices_.end(), e.a) ||
            !std::binary_search(vertices_.begin(), vertices_.end(), e.b)) {
            std::ostringstream msg;
            msg << "edge (" << e.a << "," << e.b << ") references an unknown vertex";
            throw GraphError(GraphErrc::InvalidEdge, msg.str());
        }
        edges_.push_back(make_edge(e.a, e.b));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adjacency_.resize(vertices_.size());
    for (const Edge& e : edges_) {
        adjacency_[index_of(e.a)].push_back(e.b);
        adjacency_[index_of(e.b)].push_back(e.a);
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
    }
}

std::size_t NetworkGraph::index_of(VertexId v) const
{
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) {
        std::ostringstream msg;
        msg << "vertex " << v << " is not in the graph";
        throw GraphError(GraphErrc::UnknownId, msg.str());
    }
    return static_cast<std::size_t>(it - vertices_.begin());
}

bool NetworkGraph::has_vertex(VertexId v) const
{
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool NetworkGraph::has_edge(VertexId u, VertexId v) const
{
    if (u == v) {
        return false;
    }
    return std::binary_search(edges_.begin(), edges_.end(), make_edge(u, v));
}

std::span<const VertexId> NetworkGraph::neighbors(VertexId v) const
{
    return adjacency_[index_of(v)];
}

NetworkGraph NetworkGraph::with_stage(std::uint64_t stage) const
{
    NetworkGraph copy = *this;
    copy.stage_ = stage;
    return copy;
}

} // namespace slcm::graph
