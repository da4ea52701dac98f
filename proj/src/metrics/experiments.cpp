#include "slcm/metrics/experiments.hpp"

#include "slcm/common/rng.hpp"
#include "slcm/graph/operations.hpp"
#include "slcm/graph/permutation.hpp"
#include "slcm/net/engine.hpp"
#include "slcm/net/gri.hpp"
#include "slcm/net/medium.hpp"
#include "slcm/net/topology.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>

namespace slcm::metrics {

namespace {

std::optional<std::size_t> parse_size(std::string_view s)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

} // namespace

std::vector<std::size_t> NodeRange::values() const
{
    std::vector<std::size_t> out;
    for (auto n = first; n <= last; n += step) {
        out.push_back(n);
    }
    return out;
}

std::optional<NodeRange> parse_node_range(std::string_view text)
{
    const auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        const auto single = parse_size(text);
        return single ? std::optional<NodeRange>({*single, *single, 1}) : std::nullopt;
    }
    const auto colon = text.find(':', dots);
    const auto first = parse_size(text.substr(0, dots));
    const auto last = parse_size(text.substr(dots + 2, colon == std::string_view::npos ? text.npos : colon - dots - 2));
    const auto step = colon == std::string_view::npos ? std::optional<std::size_t>(1) : parse_size(text.substr(colon + 1));
    if (!first || !last || !step || *step == 0 || *first > *last) {
        return std::nullopt;
    }
    return NodeRange{*first, *last, *step};
}

ScenarioConfig at_constant_density(const ScenarioConfig& base, std::size_t nodes)
{
    ScenarioConfig cfg = base;
    const double scale = std::sqrt(static_cast<double>(nodes) / static_cast<double>(base.nodes));
    cfg.nodes = nodes;
    cfg.width = base.width * scale;
    cfg.height = base.height * scale;
    return cfg;
}

RunArtifacts run_to_dir(const ScenarioConfig& cfg, const std::filesystem::path& dir)
{
    RunArtifacts out;
    out.result = run_scenario(cfg);
    std::filesystem::create_directories(dir);
    out.trace_file = dir / fmt::format("trace_seed{}.tsv", cfg.seed);
    out.csv_file = dir / fmt::format("summary_seed{}.csv", cfg.seed);
    std::ofstream trace(out.trace_file, std::ios::binary);
    out.result.trace.write(trace);
    if (!trace) {
        throw std::runtime_error("cannot write " + out.trace_file.string());
    }
    write_text(out.csv_file, fmt::format("{}\n{}\n", csv_header(), csv_row(out.result.summary)));
    return out;
}

std::vector<SweepRow> sweep(const ScenarioConfig& base, std::span<const std::size_t> nodes, std::size_t seeds)
{
    std::vector<SweepRow> rows;
    for (auto n : nodes) {
        for (std::size_t k = 0; k < seeds; ++k) {
            auto cfg = at_constant_density(base, n);
            cfg.seed = base.seed + k;
            rows.push_back({n, cfg.seed, run_scenario(cfg).summary});
        }
    }
    return rows;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows)
{
    out << csv_header() << '\n';
    for (const auto& r : rows) {
        out << csv_row(r.summary) << '\n';
    }
}

BroadcastComparison compare_broadcast(const ScenarioConfig& cfg, std::size_t seeds)
{
    BroadcastComparison out;
    const net::RadioModel radio{cfg.radio_range, {cfg.width, cfg.height}};
    double ratio_sum = 0.0;
    double with_returns_sum = 0.0;
    for (std::size_t k = 0; k < seeds; ++k) {
        const auto seed = cfg.seed + k;
        Rng place = derive_rng(seed, 1);
        const auto placements = net::connected_placement(cfg.nodes, radio, place);
        if (!placements) {
            continue;
        }
        const auto topology = net::neighbors(radio, *placements);
        const net::MediumConfig medium_cfg{cfg.hop_latency, cfg.processing_delay, 0.0};
        const net::NodeId initiator = placements->front().id;

        net::Engine gri_engine;
        Rng gri_rng = derive_rng(seed, 2);
        net::Medium gri_medium(gri_engine, medium_cfg, gri_rng);
        gri_medium.set_topology(topology);
        net::GriHandlers handlers;
        handlers.on_roster = [](const net::GriResult&) { return std::optional<std::size_t>(8); };
        const auto gri = net::gri_broadcast(gri_medium, initiator, {}, handlers, gri_rng);
        gri_engine.run();

        net::Engine flood_engine;
        Rng flood_rng = derive_rng(seed, 3);
        net::Medium flood_medium(flood_engine, medium_cfg, flood_rng);
        flood_medium.set_topology(topology);
        const auto flood = net::flood_broadcast(flood_medium, initiator, 8);
        flood_engine.run();

        const auto flood_count = static_cast<double>(flood->transmissions);
        ++out.seeds;
        out.gri += gri->broadcast_packets();
        out.gri_returns += gri->packets_return;
        out.flood += flood->transmissions;
        out.per_seed.push_back(static_cast<double>(gri->broadcast_packets()) / flood_count);
        ratio_sum += out.per_seed.back();
        with_returns_sum += static_cast<double>(gri->total_packets()) / flood_count;
        out.go_within_flood = out.go_within_flood && gri->packets_go <= flood->transmissions;
        out.rosters_complete = out.rosters_complete && gri->roster.size() + 1 == topology.size();
    }
    if (out.seeds > 0) {
        out.ratio = ratio_sum / static_cast<double>(out.seeds);
        out.ratio_with_returns = with_returns_sum / static_cast<double>(out.seeds);
    }
    return out;
}

std::string format_comparison(const BroadcastComparison& c)
{
    return fmt::format("gri={} flood={} ratio={:.6f}\ngri_with_returns={} ratio_with_returns={:.6f} seeds={}\n", c.gri,
                       c.flood, c.ratio, c.gri + c.gri_returns, c.ratio_with_returns, c.seeds);
}

std::optional<zkp::CheatStrategy> parse_cheat_strategy(std::string_view s)
{
    for (auto c : {zkp::CheatStrategy::FakeGraph, zkp::CheatStrategy::IsomorphWithoutCycle,
                   zkp::CheatStrategy::CoinFlip}) {
        if (s == zkp::to_string(c)) {
            return c;
        }
    }
    return std::nullopt;
}

double ZkpBench::expected() const
{
    return cheat ? std::ldexp(1.0, -static_cast<int>(rounds)) : 1.0;
}

ZkpBench zkp_bench(std::size_t rounds, std::size_t trials, std::optional<zkp::CheatStrategy> cheat,
                   std::uint64_t seed, std::size_t vertices)
{
    std::vector<graph::VertexId> ids;
    for (std::uint32_t i = 1; i <= vertices; ++i) {
        ids.push_back(graph::VertexId{i});
    }
    Rng rng = derive_rng(seed, 0);
    const std::vector<graph::Permutation> perms{graph::Permutation::random(ids, rng)};
    const auto hc = graph::generate_initial_cycle(perms);
    const auto g = graph::complete_graph(hc, 2 * vertices, rng);
    std::optional<zkp::Witness> witness;
    if (!cheat) {
        witness = zkp::Witness{g, hc};
    }

    ZkpBench out{rounds, trials, cheat, 0};
    for (std::size_t t = 0; t < trials; ++t) {
        const auto transcript =
            zkp::run_protocol(witness, g, rounds, rng, cheat.value_or(zkp::CheatStrategy::CoinFlip));
        out.accepted += transcript.accepted;
    }
    return out;
}

std::string format_bench(const ZkpBench& b)
{
    return fmt::format("rounds={} trials={} prover={} accepted={} rate={:.6f} expected={:.6f}\n", b.rounds, b.trials,
                       b.cheat ? zkp::to_string(*b.cheat) : "honest", b.accepted, b.rate(), b.expected());
}

} // namespace slcm::metrics
