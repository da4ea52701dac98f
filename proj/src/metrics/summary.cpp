#include "slcm/metrics/summary.hpp"

#include "slcm/metrics/storage.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <utility>

namespace slcm::metrics {

namespace {

double number_field(const net::TraceRecord& r, std::string_view key, std::size_t line)
{
    const auto v = net::extra_field(r.extra, key);
    if (!v) {
        throw net::TraceError(line, "missing " + std::string(key));
    }
    const std::string text(*v);
    char* end = nullptr;
    const double d = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw net::TraceError(line, "bad " + std::string(key) + " '" + text + "'");
    }
    return d;
}

} // namespace

double RunSummary::share(std::string_view channel) const
{
    const auto it = traffic_share.find(channel);
    return it == traffic_share.end() ? 0.0 : it->second;
}

RunSummary summarize(const net::Trace& trace)
{
    RunSummary s;
    double processing = 0.0;
    bool have_meta = false;
    std::map<std::string, std::uint64_t, std::less<>> bytes;
    std::map<net::NodeId, std::uint64_t> handled;
    std::set<std::pair<net::NodeId, net::NodeId>> pairs;
    std::set<std::uint64_t> lost_ids;
    double delay_sum = 0.0;
    std::uint64_t delivered = 0;

    std::size_t line = 0;
    for (const auto& r : trace.records()) {
        ++line;
        switch (r.event) {
        case net::EventKind::Meta:
            if (!have_meta && net::extra_field(r.extra, "nodes")) {
                s.nodes = static_cast<std::uint64_t>(number_field(r, "nodes", line));
                processing = number_field(r, "proc", line);
                have_meta = true;
            }
            break;
        case net::EventKind::Gen:
        case net::EventKind::Fwd: {
            ++(r.event == net::EventKind::Gen ? s.generated : s.forwarded);
            const auto ch = net::extra_field(r.extra, "ch");
            bytes[std::string(ch.value_or("-"))] += r.size;
            ++handled[r.node];
            break;
        }
        case net::EventKind::Rx: {
            const double delay = r.time - number_field(r, "org", line);
            const auto from = static_cast<net::NodeId>(number_field(r, "from", line));
            delay_sum += delay;
            s.max_delay = std::max(s.max_delay, delay);
            ++delivered;
            pairs.insert(std::minmax(from, r.node));
            ++handled[r.node];
            break;
        }
        case net::EventKind::Drop:
            lost_ids.insert(r.packet_id);
            break;
        case net::EventKind::Update: {
            const auto type = net::extra_field(r.extra, "type");
            s.insertions += type == "ins";
            if (type == "del") {
                ++(net::extra_field(r.extra, "cause") == "prune" ? s.prunes : s.deletions);
            }
            break;
        }
        case net::EventKind::Access:
            ++s.access_controls;
            break;
        case net::EventKind::State:
        case net::EventKind::Term:
            break;
        }
    }

    s.connections = pairs.size();
    s.lost = lost_ids.size();
    s.mean_delay = delivered == 0 ? 0.0 : delay_sum / static_cast<double>(delivered);
    if (!handled.empty()) {
        std::uint64_t total = 0;
        std::uint64_t most = 0;
        for (const auto& [node, count] : handled) {
            total += count;
            most = std::max(most, count);
        }
        s.mean_processing = processing * static_cast<double>(total) / static_cast<double>(handled.size());
        s.max_processing = processing * static_cast<double>(most);
    }
    std::uint64_t total_bytes = 0;
    for (const auto& [ch, b] : bytes) {
        total_bytes += b;
    }
    for (const auto& [ch, b] : bytes) {
        s.traffic_share[ch] = static_cast<double>(b) / static_cast<double>(total_bytes);
    }
    s.storage_bits_rsa = storage_estimate(s.nodes, KeyScheme::Rsa1024);
    s.storage_bits_ecc = storage_estimate(s.nodes, KeyScheme::Ecc160);
    return s;
}

RunSummary summarize(std::istream& trace)
{
    return summarize(net::Trace::read(trace));
}

std::string_view csv_header()
{
    return "nodes,connections,generated,forwarded,lost,mean_delay,max_delay,mean_proc,max_proc,pol_share,zkp_share,"
           "storage_rsa,storage_ecc";
}

std::string csv_row(const RunSummary& s)
{
    return fmt::format("{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{},{}", s.nodes, s.connections,
                       s.generated, s.forwarded, s.lost, s.mean_delay, s.max_delay, s.mean_processing,
                       s.max_processing, s.share("pol"), s.share("zkp"), s.storage_bits_rsa, s.storage_bits_ecc);
}

} // namespace slcm::metrics
