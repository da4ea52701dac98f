#pragma once

#include "slcm/common/rng.hpp"
#include "slcm/graph/hamiltonian_cycle.hpp"
#include "slcm/graph/network_graph.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slcm::zkp {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr std::size_t kSaltBytes = 16;

enum class ZkpErrc {
    SaltTooShort,
    InvalidWitness,
    StateAlreadyConsumed,
    VariantMismatch,
    InvalidRoundCount,
    MalformedTranscript,
};

const char* to_string(ZkpErrc code);

class ZkpError : public std::runtime_error {
public:
    ZkpError(ZkpErrc code, const std::string& what);

    ZkpErrc code() const noexcept { return code_; }

private:
    ZkpErrc code_;
};

/// SHA-256 of `payload || salt`.
struct Commitment {
    Digest digest{};

    std::string hex() const;
    bool operator==(const Commitment&) const = default;
};

Commitment commit(std::span<const std::uint8_t> payload, std::span<const std::uint8_t> salt);

Digest sha256(std::span<const std::uint8_t> data);

Bytes random_salt(Rng& rng);

// Canonical byte encodings hashed by commitments. Big-endian u32 fields;
// the graph stage is not part of the encoding.
Bytes encode_graph(const graph::NetworkGraph& g);
Bytes encode_cycle(const graph::HamiltonianCycle& hc);

std::string to_hex(std::span<const std::uint8_t> bytes);

} // namespace slcm::zkp
