#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slcm::graph {

/// Identifier of a legitimate node, doubling as its vertex in the group graph.
struct VertexId {
    std::uint32_t value{0};

    constexpr auto operator<=>(const VertexId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, VertexId v)
{
    return os << v.value;
}

/// Undirected edge, always stored with `a < b`.
struct Edge {
    VertexId a;
    VertexId b;

    constexpr auto operator<=>(const Edge&) const = default;
};

Edge make_edge(VertexId u, VertexId v);

enum class GraphErrc {
    FewerThanThreeVertices,
    MismatchedDomains,
    InfeasibleDensity,
    DegreeNotIntegral,
    DuplicateId,
    InsufficientNonAdjacentCandidates,
    UnknownId,
    NetworkTooSmall,
    DomainMismatch,
    NotBijective,
    TooLarge,
    InvalidEdge,
    InvalidCycle,
    MalformedInput,
};

const char* to_string(GraphErrc code);

class GraphError : public std::runtime_error {
public:
    GraphError(GraphErrc code, const std::string& what);

    GraphErrc code() const noexcept { return code_; }

private:
    GraphErrc code_;
};

/// Vertices that share an edge with `owner` as chosen at insertion or
/// initialization time.
struct NeighborGroup {
    VertexId owner;
    std::vector<VertexId> members; // sorted ascending

    bool operator==(const NeighborGroup&) const = default;
};

/// Minimum order below which deletions signal network termination.
inline constexpr std::size_t kDefaultMinVertices = 5;

} // namespace slcm::graph

template <>
struct std::hash<slcm::graph::VertexId> {
    std::size_t operator()(slcm::graph::VertexId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};
