#include "slcm/net/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace slcm::net {

Topology::Topology(std::vector<NodeId> nodes, std::vector<std::vector<NodeId>> adjacency)
    : nodes_(std::move(nodes)), adjacency_(std::move(adjacency))
{
    if (nodes_.size() != adjacency_.size() || !std::is_sorted(nodes_.begin(), nodes_.end())) {
        throw std::invalid_argument("topology nodes must be sorted with one adjacency list each");
    }
    for (auto& list : adjacency_) {
        std::sort(list.begin(), list.end());
    }
}

std::optional<std::size_t> Topology::index_of(NodeId id) const
{
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

bool Topology::contains(NodeId id) const
{
    return index_of(id).has_value();
}

std::span<const NodeId> Topology::neighbors(NodeId id) const
{
    const auto i = index_of(id);
    if (!i) {
        return {};
    }
    return adjacency_[*i];
}

bool Topology::linked(NodeId a, NodeId b) const
{
    const auto ns = neighbors(a);
    return std::binary_search(ns.begin(), ns.end(), b);
}

std::size_t Topology::edge_count() const
{
    std::size_t twice = 0;
    for (const auto& list : adjacency_) {
        twice += list.size();
    }
    return twice / 2;
}

std::vector<NodeId> Topology::component_of(NodeId id) const
{
    if (!contains(id)) {
        return {};
    }
    std::vector<NodeId> seen{id};
    std::vector<NodeId> frontier{id};
    while (!frontier.empty()) {
        const auto v = frontier.back();
        frontier.pop_back();
        for (auto u : neighbors(v)) {
            if (std::find(seen.begin(), seen.end(), u) == seen.end()) {
                seen.push_back(u);
                frontier.push_back(u);
            }
        }
    }
    std::sort(seen.begin(), seen.end());
    return seen;
}

bool Topology::connected() const
{
    return nodes_.empty() || component_of(nodes_.front()).size() == nodes_.size();
}

Topology neighbors(const RadioModel& radio, std::span<const Placement> positions)
{
    std::vector<Placement> sorted(positions.begin(), positions.end());
    std::sort(sorted.begin(), sorted.end(), [](const Placement& a, const Placement& b) { return a.id < b.id; });
    std::vector<NodeId> ids;
    ids.reserve(sorted.size());
    for (const auto& p : sorted) {
        ids.push_back(p.id);
    }
    std::vector<std::vector<NodeId>> adj(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            if (radio.in_range(sorted[i].position, sorted[j].position)) {
                adj[i].push_back(sorted[j].id);
                adj[j].push_back(sorted[i].id);
            }
        }
    }
    return Topology(std::move(ids), std::move(adj));
}

std::vector<Placement> random_placement(std::size_t n, const Arena& arena, Rng& rng)
{
    std::vector<Placement> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = uniform_real(rng, 0.0, arena.width);
        const double y = uniform_real(rng, 0.0, arena.height);
        out.push_back({static_cast<NodeId>(i + 1), {x, y}});
    }
    return out;
}

std::optional<std::vector<Placement>> connected_placement(std::size_t n, const RadioModel& radio, Rng& rng,
                                                          int max_attempts)
{
    for (int i = 0; i < max_attempts; ++i) {
        auto p = random_placement(n, radio.arena, rng);
        if (neighbors(radio, p).connected()) {
            return p;
        }
    }
    return std::nullopt;
}

} // namespace slcm::net
