#include "slcm/protocol/update_queue.hpp"

#include <algorithm>
#include <cstring>

namespace slcm::protocol {

zkp::Digest graph_digest(const graph::NetworkGraph& g)
{
    auto bytes = zkp::encode_graph(g);
    for (int shift = 56; shift >= 0; shift -= 8) {
        bytes.push_back(static_cast<std::uint8_t>(g.stage() >> shift));
    }
    return zkp::sha256(bytes);
}

UpdateQueue::UpdateQueue(std::uint64_t base_stage, zkp::Digest base_digest, double retention)
    : base_stage_(base_stage), head_stage_(base_stage), base_digest_(base_digest), retention_(retention)
{
}

void UpdateQueue::push(UpdateEvent event)
{
    if (event.changes_membership()) {
        head_stage_ = event.stage;
    }
    events_.push_back(std::move(event));
}

void UpdateQueue::evict(double now)
{
    while (!events_.empty() && events_.front().time < now - retention_) {
        const auto& e = events_.front();
        if (e.changes_membership()) {
            base_stage_ = e.stage;
            base_digest_ = e.graph_digest;
        }
        events_.pop_front();
    }
}

std::optional<std::vector<UpdateEvent>> UpdateQueue::gap_since(std::uint64_t stage) const
{
    if (stage < base_stage_) {
        return std::nullopt;
    }
    std::vector<UpdateEvent> out;
    for (const auto& e : events_) {
        if (e.changes_membership() && e.stage > stage) {
            out.push_back(e);
        }
    }
    return out;
}

std::optional<zkp::Digest> UpdateQueue::digest_at(std::uint64_t stage) const
{
    if (stage == base_stage_) {
        return base_digest_;
    }
    for (const auto& e : events_) {
        if (e.changes_membership() && e.stage == stage) {
            return e.graph_digest;
        }
    }
    return std::nullopt;
}

std::optional<double> UpdateQueue::last_proof(VertexId v) const
{
    for (auto it = events_.rbegin(); it != events_.rend(); ++it) {
        const bool proves = std::visit(
            [v](const auto& body) {
                using T = std::decay_t<decltype(body)>;
                if constexpr (std::is_same_v<T, InsertionUpdate>) {
                    return body.vertex == v || body.authenticator == v;
                } else if constexpr (std::is_same_v<T, DeletionUpdate>) {
                    return body.reporter == v;
                } else {
                    return body.initiator == v || std::binary_search(body.proofs.begin(), body.proofs.end(), v);
                }
            },
            it->body);
        if (proves) {
            return it->time;
        }
    }
    return std::nullopt;
}

} // namespace slcm::protocol
