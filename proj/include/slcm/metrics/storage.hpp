#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace slcm::metrics {

enum class KeyScheme { Rsa1024, Ecc160 };

std::optional<KeyScheme> parse_key_scheme(std::string_view s);

/// Bits a node stores for `n` peers: one public key plus one
/// certificate-sized signature each.
std::uint64_t storage_estimate(std::uint64_t n, KeyScheme scheme);

} // namespace slcm::metrics
