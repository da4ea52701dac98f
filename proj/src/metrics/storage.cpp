#include "slcm/metrics/storage.hpp"

namespace slcm::metrics {

std::optional<KeyScheme> parse_key_scheme(std::string_view s)
{
    if (s == "rsa1024") {
        return KeyScheme::Rsa1024;
    }
    if (s == "ecc160") {
        return KeyScheme::Ecc160;
    }
    return std::nullopt;
}

std::uint64_t storage_estimate(std::uint64_t n, KeyScheme scheme)
{
    const std::uint64_t key_bits = scheme == KeyScheme::Rsa1024 ? 1024 : 160;
    return n * key_bits * 2;
}

} // namespace slcm::metrics
