#pragma once

#include "slcm/net/radio.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slcm::net {

enum class EventKind : std::uint8_t { Gen, Fwd, Rx, Drop, State, Update, Access, Meta, Term };

enum class PacketKind : std::uint8_t { None, GriGo, GriReturn, GriInfo, Flood, ZkpMsg, InsertionMsg };

/// Traffic class a packet is accounted under.
enum class Channel : std::uint8_t { None, ProofOfLife, Zkp, Insertion, Deletion, Access, Flood };

std::string_view to_string(EventKind k);
std::string_view to_string(PacketKind k);
std::string_view to_string(Channel c);
std::optional<EventKind> parse_event_kind(std::string_view s);
std::optional<PacketKind> parse_packet_kind(std::string_view s);
std::optional<Channel> parse_channel(std::string_view s);

struct TraceRecord {
    double time{0.0};
    EventKind event{EventKind::Meta};
    NodeId node{0};
    PacketKind packet{PacketKind::None};
    std::uint64_t packet_id{0};
    std::size_t size{0};
    std::string extra;

    bool operator==(const TraceRecord&) const = default;
};

/// One tab-separated line without the newline; times use fixed 6 decimals.
std::string format_record(const TraceRecord& r);

class TraceError : public std::runtime_error {
public:
    TraceError(std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

TraceRecord parse_record(std::string_view line, std::size_t line_number);

/// Value of `key` inside a `k=v;k=v` extra field.
std::optional<std::string_view> extra_field(std::string_view extra, std::string_view key);

class Trace {
public:
    void append(TraceRecord r) { records_.push_back(std::move(r)); }
    const std::vector<TraceRecord>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }

    void write(std::ostream& os) const;
    static Trace read(std::istream& is);

private:
    std::vector<TraceRecord> records_;
};

} // namespace slcm::net
