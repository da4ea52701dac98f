#include "slcm/graph/permutation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace slcm::graph {

Permutation::Permutation(std::map<VertexId, VertexId> mapping) : mapping_(std::move(mapping))
{
    std::set<VertexId> image;
    for (const auto& [from, to] : mapping_) {
        if (!mapping_.contains(to) || !image.insert(to).second) {
            throw GraphError(GraphErrc::NotBijective, "mapping is not a bijection of its domain");
        }
    }
}

Permutation Permutation::identity(std::span<const VertexId> domain)
{
    std::map<VertexId, VertexId> m;
    for (VertexId v : domain) {
        m.emplace(v, v);
    }
    return Permutation(std::move(m));
}

Permutation Permutation::random(std::span<const VertexId> domain, Rng& rng)
{
    std::vector<VertexId> image(domain.begin(), domain.end());
    std::shuffle(image.begin(), image.end(), rng);
    std::map<VertexId, VertexId> m;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        m.emplace(domain[i], image[i]);
    }
    return Permutation(std::move(m));
}

VertexId Permutation::operator()(VertexId v) const
{
    auto it = mapping_.find(v);
    if (it == mapping_.end()) {
        std::ostringstream msg;
        msg << "vertex " << v << " is outside the permutation domain";
        throw GraphError(GraphErrc::DomainMismatch, msg.str());
    }
    return it->second;
}

Permutation Permutation::then(const Permutation& next) const
{
    if (!next.same_domain(domain())) {
        throw GraphError(GraphErrc::MismatchedDomains, "cannot compose permutations over different sets");
    }
    std::map<VertexId, VertexId> m;
    for (const auto& [from, to] : mapping_) {
        m.emplace(from, next(to));
    }
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const
{
    std::map<VertexId, VertexId> m;
    for (const auto& [from, to] : mapping_) {
        m.emplace(to, from);
    }
    return Permutation(std::move(m));
}

std::vector<VertexId> Permutation::domain() const
{
    std::vector<VertexId> out;
    out.reserve(mapping_.size());
    for (const auto& entry : mapping_) {
        out.push_back(entry.first);
    }
    return out;
}

bool Permutation::same_domain(std::span<const VertexId> vertices) const
{
    if (vertices.size() != mapping_.size()) {
        return false;
    }
    return std::all_of(vertices.begin(), vertices.end(), [&](VertexId v) { return mapping_.contains(v); });
}

} // namespace slcm::graph
