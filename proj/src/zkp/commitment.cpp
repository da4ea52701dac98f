#include "slcm/zkp/commitment.hpp"

#include <openssl/evp.h>

#include <memory>

namespace slcm::zkp {

const char* to_string(ZkpErrc code)
{
    switch (code) {
    case ZkpErrc::SaltTooShort: return "SaltTooShort";
    case ZkpErrc::InvalidWitness: return "InvalidWitness";
    case ZkpErrc::StateAlreadyConsumed: return "StateAlreadyConsumed";
    case ZkpErrc::VariantMismatch: return "VariantMismatch";
    case ZkpErrc::InvalidRoundCount: return "InvalidRoundCount";
    case ZkpErrc::MalformedTranscript: return "MalformedTranscript";
    }
    return "unknown";
}

ZkpError::ZkpError(ZkpErrc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

namespace {

struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

void put_u32(Bytes& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

Digest hash_parts(std::span<const std::uint8_t> first, std::span<const std::uint8_t> second)
{
    std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
    Digest d{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), first.data(), first.size()) != 1 ||
        EVP_DigestUpdate(ctx.get(), second.data(), second.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), d.data(), &len) != 1 || len != d.size()) {
        throw std::runtime_error("sha256 failed");
    }
    return d;
}

} // namespace

Commitment commit(std::span<const std::uint8_t> payload, std::span<const std::uint8_t> salt)
{
    if (salt.size() < kSaltBytes) {
        throw ZkpError(ZkpErrc::SaltTooShort, "salt has " + std::to_string(salt.size()) + " bytes");
    }
    return Commitment{hash_parts(payload, salt)};
}

Digest sha256(std::span<const std::uint8_t> data)
{
    return hash_parts(data, {});
}

std::string Commitment::hex() const { return to_hex(digest); }

Bytes random_salt(Rng& rng)
{
    Bytes salt(kSaltBytes);
    for (std::size_t i = 0; i < salt.size(); i += 8) {
        const std::uint64_t word = rng();
        for (std::size_t k = 0; k < 8 && i + k < salt.size(); ++k) {
            salt[i + k] = static_cast<std::uint8_t>(word >> (8 * k));
        }
    }
    return salt;
}

Bytes encode_graph(const graph::NetworkGraph& g)
{
    Bytes out;
    out.reserve(1 + 8 + 4 * g.order() + 8 * g.size());
    out.push_back('G');
    put_u32(out, static_cast<std::uint32_t>(g.order()));
    for (auto v : g.vertices()) {
        put_u32(out, v.value);
    }
    put_u32(out, static_cast<std::uint32_t>(g.size()));
    for (const auto& e : g.edges()) {
        put_u32(out, e.a.value);
        put_u32(out, e.b.value);
    }
    return out;
}

Bytes encode_cycle(const graph::HamiltonianCycle& hc)
{
    Bytes out;
    out.reserve(1 + 4 + 4 * hc.size());
    out.push_back('H');
    put_u32(out, static_cast<std::uint32_t>(hc.size()));
    for (auto v : hc.order()) {
        put_u32(out, v.value);
    }
    return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(kDigits[b >> 4]);
        s.push_back(kDigits[b & 0xF]);
    }
    return s;
}

} // namespace slcm::zkp
