#include "slcm/net/trace.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <utility>

namespace slcm::net {

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 9> kEventNames{{
    {EventKind::Gen, "gen"},
    {EventKind::Fwd, "fwd"},
    {EventKind::Rx, "rx"},
    {EventKind::Drop, "drop"},
    {EventKind::State, "state"},
    {EventKind::Update, "update"},
    {EventKind::Access, "acc"},
    {EventKind::Meta, "meta"},
    {EventKind::Term, "term"},
}};

constexpr std::array<std::pair<PacketKind, std::string_view>, 7> kPacketNames{{
    {PacketKind::None, "-"},
    {PacketKind::GriGo, "gri-go"},
    {PacketKind::GriReturn, "gri-return"},
    {PacketKind::GriInfo, "gri-info"},
    {PacketKind::Flood, "flood"},
    {PacketKind::ZkpMsg, "zkp-msg"},
    {PacketKind::InsertionMsg, "insertion-msg"},
}};

constexpr std::array<std::pair<Channel, std::string_view>, 7> kChannelNames{{
    {Channel::None, "-"},
    {Channel::ProofOfLife, "pol"},
    {Channel::Zkp, "zkp"},
    {Channel::Insertion, "ins"},
    {Channel::Deletion, "del"},
    {Channel::Access, "acc"},
    {Channel::Flood, "flood"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e)
{
    for (const auto& [k, v] : table) {
        if (k == e) {
            return v;
        }
    }
    return "?";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s)
{
    for (const auto& [k, v] : table) {
        if (v == s) {
            return k;
        }
    }
    return std::nullopt;
}

template <typename T>
bool parse_number(std::string_view s, T& out)
{
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

std::string_view to_string(EventKind k) { return name_of(kEventNames, k); }
std::string_view to_string(PacketKind k) { return name_of(kPacketNames, k); }
std::string_view to_string(Channel c) { return name_of(kChannelNames, c); }
std::optional<EventKind> parse_event_kind(std::string_view s) { return lookup(kEventNames, s); }
std::optional<PacketKind> parse_packet_kind(std::string_view s) { return lookup(kPacketNames, s); }
std::optional<Channel> parse_channel(std::string_view s) { return lookup(kChannelNames, s); }

std::string format_record(const TraceRecord& r)
{
    return fmt::format("{:.6f}\t{}\t{}\t{}\t{}\t{}\t{}", r.time, to_string(r.event), r.node, to_string(r.packet),
                       r.packet_id, r.size, r.extra.empty() ? "-" : r.extra);
}

TraceError::TraceError(std::size_t line, const std::string& what)
    : std::runtime_error("TraceCorrupt at line " + std::to_string(line) + ": " + what), line_(line)
{
}

TraceRecord parse_record(std::string_view line, std::size_t line_number)
{
    std::array<std::string_view, 7> f;
    std::size_t count = 0;
    while (count < f.size()) {
        const auto tab = line.find('\t');
        f[count++] = line.substr(0, tab);
        if (tab == std::string_view::npos) {
            line = {};
            break;
        }
        line.remove_prefix(tab + 1);
    }
    if (count != f.size() || !line.empty()) {
        throw TraceError(line_number, "expected 7 tab-separated fields");
    }
    TraceRecord r;
    // from_chars for double is missing from libstdc++ 11, so go through stod.
    try {
        std::size_t used = 0;
        r.time = std::stod(std::string(f[0]), &used);
        if (used != f[0].size()) {
            throw std::invalid_argument("time");
        }
    } catch (const std::exception&) {
        throw TraceError(line_number, "bad time '" + std::string(f[0]) + "'");
    }
    const auto ev = parse_event_kind(f[1]);
    const auto pk = parse_packet_kind(f[3]);
    if (!ev) {
        throw TraceError(line_number, "bad event kind '" + std::string(f[1]) + "'");
    }
    if (!pk) {
        throw TraceError(line_number, "bad packet kind '" + std::string(f[3]) + "'");
    }
    r.event = *ev;
    r.packet = *pk;
    if (!parse_number(f[2], r.node) || !parse_number(f[4], r.packet_id) || !parse_number(f[5], r.size)) {
        throw TraceError(line_number, "bad numeric field");
    }
    r.extra = f[6] == "-" ? std::string() : std::string(f[6]);
    return r;
}

std::optional<std::string_view> extra_field(std::string_view extra, std::string_view key)
{
    while (!extra.empty()) {
        const auto semi = extra.find(';');
        const auto item = extra.substr(0, semi);
        const auto eq = std::find(item.begin(), item.end(), '=');
        if (eq != item.end() && std::string_view(item.begin(), eq) == key) {
            return std::string_view(eq + 1, item.end());
        }
        if (semi == std::string_view::npos) {
            break;
        }
        extra.remove_prefix(semi + 1);
    }
    return std::nullopt;
}

void Trace::write(std::ostream& os) const
{
    for (const auto& r : records_) {
        os << format_record(r) << '\n';
    }
}

Trace Trace::read(std::istream& is)
{
    Trace t;
    std::string line;
    std::size_t n = 0;
    while (std::getline(is, line)) {
        ++n;
        if (line.empty()) {
            continue;
        }
        t.append(parse_record(line, n));
    }
    return t;
}

} // namespace slcm::net
