#pragma once

#include "slcm/graph/network_graph.hpp"
#include "slcm/graph/types.hpp"
#include "slcm/zkp/commitment.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <variant>
#include <vector>

namespace slcm::protocol {

using graph::VertexId;

struct InsertionUpdate {
    VertexId vertex;
    graph::NeighborGroup group;
    graph::Edge splice;
    VertexId authenticator;
};

struct DeletionUpdate {
    VertexId vertex;
    VertexId reporter;
};

/// Proofs of life gathered by one GRI round, initiator included.
struct RosterUpdate {
    VertexId initiator;
    std::vector<VertexId> proofs;
};

using UpdateBody = std::variant<InsertionUpdate, DeletionUpdate, RosterUpdate>;

struct UpdateEvent {
    std::uint64_t stage{0}; // stage of G after the event
    double time{0.0};
    UpdateBody body;
    zkp::Digest graph_digest{}; // digest of G after the event

    bool changes_membership() const { return !std::holds_alternative<RosterUpdate>(body); }
};

/// Stage-bound digest of a graph, used to recognise a G_t presented openly.
zkp::Digest graph_digest(const graph::NetworkGraph& g);

/// Time-ordered log of updates with a retention window. Evicted membership
/// events fold into the base (stage, digest) so the graph at any retained
/// stage stays identifiable.
class UpdateQueue {
public:
    UpdateQueue() = default;
    UpdateQueue(std::uint64_t base_stage, zkp::Digest base_digest, double retention);

    void push(UpdateEvent event);
    void evict(double now);

    void set_retention(double retention) { retention_ = retention; }
    double retention() const noexcept { return retention_; }

    std::uint64_t base_stage() const noexcept { return base_stage_; }
    std::uint64_t head_stage() const noexcept { return head_stage_; }
    const std::deque<UpdateEvent>& events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }

    /// Membership events that take G from `stage` to the head stage, or
    /// nullopt if some were evicted.
    std::optional<std::vector<UpdateEvent>> gap_since(std::uint64_t stage) const;

    std::optional<zkp::Digest> digest_at(std::uint64_t stage) const;

    /// Time of the latest retained event in which `v` showed it was alive.
    std::optional<double> last_proof(VertexId v) const;

private:
    std::deque<UpdateEvent> events_;
    std::uint64_t base_stage_{0};
    std::uint64_t head_stage_{0};
    zkp::Digest base_digest_{};
    double retention_{0.0};
};

} // namespace slcm::protocol
