#pragma once

#include "slcm/net/trace.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>

namespace slcm::metrics {

struct RunSummary {
    std::uint64_t nodes{0};
    std::uint64_t connections{0}; // distinct node pairs that exchanged a delivered packet
    std::uint64_t generated{0};   // originated transmissions
    std::uint64_t forwarded{0};   // relayed transmissions
    std::uint64_t lost{0};        // generated packets with at least one dropped copy
    double mean_delay{0.0};       // over delivered copies, receive time - creation time
    double max_delay{0.0};
    double mean_processing{0.0}; // per node: packets handled x processing delay
    double max_processing{0.0};
    std::map<std::string, double, std::less<>> traffic_share; // channel -> fraction of transmitted bytes
    std::uint64_t storage_bits_rsa{0};
    std::uint64_t storage_bits_ecc{0};
    std::uint64_t insertions{0};
    std::uint64_t deletions{0}; // departures drawn by the churn model
    std::uint64_t prunes{0};    // deletions issued by proof-of-life pruning
    std::uint64_t access_controls{0};

    double share(std::string_view channel) const;

    bool operator==(const RunSummary&) const = default;
};

/// Reads the `meta` record for node count and processing delay, then
/// aggregates packet records.
RunSummary summarize(const net::Trace& trace);

/// Parses and summarizes a trace stream; malformed lines throw
/// net::TraceError ("TraceCorrupt at line N").
RunSummary summarize(std::istream& trace);

std::string_view csv_header();
std::string csv_row(const RunSummary& s);

} // namespace slcm::metrics
