#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/net/radio.hpp"

#include <optional>
#include <span>
#include <vector>

namespace slcm::net {

struct Placement {
    NodeId id{0};
    Point position;
};

/// Symmetric adjacency over a set of online nodes, sorted by id.
class Topology {
public:
    Topology() = default;
    Topology(std::vector<NodeId> nodes, std::vector<std::vector<NodeId>> adjacency);

    std::span<const NodeId> nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    bool contains(NodeId id) const;

    /// Sorted neighbour ids; empty for unknown nodes.
    std::span<const NodeId> neighbors(NodeId id) const;
    bool linked(NodeId a, NodeId b) const;
    std::size_t edge_count() const;

    std::vector<NodeId> component_of(NodeId id) const;
    bool connected() const;

    bool operator==(const Topology&) const = default;

private:
    std::optional<std::size_t> index_of(NodeId id) const;

    std::vector<NodeId> nodes_;
    std::vector<std::vector<NodeId>> adjacency_;
};

Topology neighbors(const RadioModel& radio, std::span<const Placement> positions);

std::vector<Placement> random_placement(std::size_t n, const Arena& arena, Rng& rng);

/// Redraws placements until the disk graph is connected. Returns nullopt
/// after `max_attempts` failures.
std::optional<std::vector<Placement>> connected_placement(std::size_t n, const RadioModel& radio, Rng& rng,
                                                          int max_attempts = 1000);

} // namespace slcm::net
