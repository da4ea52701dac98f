#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/graph/types.hpp"

#include <map>
#include <span>
#include <vector>

namespace slcm::graph {

/// Bijection of a vertex set onto itself.
class Permutation {
public:
    Permutation() = default;

    /// Throws `NotBijective` unless the image set equals the domain.
    explicit Permutation(std::map<VertexId, VertexId> mapping);

    static Permutation identity(std::span<const VertexId> domain);
    static Permutation random(std::span<const VertexId> domain, Rng& rng);

    /// Throws `DomainMismatch` for a vertex outside the domain.
    VertexId operator()(VertexId v) const;

    /// Composition that applies `*this` first and `next` second.
    Permutation then(const Permutation& next) const;
    Permutation inverse() const;

    std::vector<VertexId> domain() const;
    bool same_domain(std::span<const VertexId> vertices) const;
    std::size_t size() const noexcept { return mapping_.size(); }
    const std::map<VertexId, VertexId>& mapping() const noexcept { return mapping_; }

    bool operator==(const Permutation&) const = default;

private:
    std::map<VertexId, VertexId> mapping_;
};

} // namespace slcm::graph
