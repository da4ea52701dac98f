#pragma once

#include "slcm/metrics/config.hpp"
#include "slcm/metrics/scenario.hpp"
#include "slcm/metrics/summary.hpp"
#include "slcm/zkp/protocol.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slcm::metrics {

/// `first..last:step`, e.g. 10..100:10.
struct NodeRange {
    std::size_t first{0};
    std::size_t last{0};
    std::size_t step{1};

    std::vector<std::size_t> values() const;
};

std::optional<NodeRange> parse_node_range(std::string_view text);

/// Same config with the arena scaled so that nodes per unit area stays
/// what `base` has.
ScenarioConfig at_constant_density(const ScenarioConfig& base, std::size_t nodes);

struct RunArtifacts {
    std::filesystem::path trace_file;
    std::filesystem::path csv_file;
    ScenarioResult result;
};

/// Runs one scenario and writes `trace_seed<S>.tsv` and `summary_seed<S>.csv` into `dir`.
RunArtifacts run_to_dir(const ScenarioConfig& cfg, const std::filesystem::path& dir);

struct SweepRow {
    std::size_t nodes{0};
    std::uint64_t seed{0};
    RunSummary summary;
};

/// One run per (node count, seed); seeds are base.seed, base.seed + 1, ...
std::vector<SweepRow> sweep(const ScenarioConfig& base, std::span<const std::size_t> nodes, std::size_t seeds);

void write_csv(std::ostream& out, std::span<const SweepRow> rows);

struct BroadcastComparison {
    std::size_t seeds{0};            // topologies compared
    std::uint64_t gri{0};            // go + info transmissions, summed
    std::uint64_t gri_returns{0};    // return transmissions, summed
    std::uint64_t flood{0};          // flood transmissions, summed
    double ratio{0.0};               // mean over seeds of gri / flood
    double ratio_with_returns{0.0};  // same, counting returns
    bool go_within_flood{true};      // go-phase count <= flood count on every seed
    bool rosters_complete{true};     // every roster covered the whole topology
    std::vector<double> per_seed;
};

/// Builds `seeds` connected topologies from `cfg` (nodes, arena, range,
/// seeds cfg.seed onwards) and runs GRI and flooding on each.
BroadcastComparison compare_broadcast(const ScenarioConfig& cfg, std::size_t seeds = 30);

/// `gri=<int> flood=<int> ratio=<float>` and a second line with returns counted.
std::string format_comparison(const BroadcastComparison& c);

std::optional<zkp::CheatStrategy> parse_cheat_strategy(std::string_view s);

struct ZkpBench {
    std::size_t rounds{0};
    std::size_t trials{0};
    std::optional<zkp::CheatStrategy> cheat; // honest prover when empty
    std::size_t accepted{0};

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(trials); }
    double expected() const;
};

/// Repeated sessions on a fixed group graph of `vertices` vertices and degree 4.
ZkpBench zkp_bench(std::size_t rounds, std::size_t trials, std::optional<zkp::CheatStrategy> cheat,
                   std::uint64_t seed = 1, std::size_t vertices = 10);

std::string format_bench(const ZkpBench& b);

} // namespace slcm::metrics
