#include "slcm/metrics/cli.hpp"

#include "slcm/metrics/config.hpp"
#include "slcm/metrics/experiments.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace slcm::metrics {

namespace {

// Usage problems found after CLI11 parsing; reported like config errors.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::filesystem::path output_dir(const std::string& flag)
{
    if (!flag.empty()) {
        return flag;
    }
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
        return env;
    }
    return ".";
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"SLCM MANET life-cycle simulator", "slcm"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    std::optional<std::uint64_t> seed;

    auto* run = app.add_subcommand("run", "Run one scenario and write its trace and summary CSV");
    run->add_option("--config", config_path, "Scenario config file")->required();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--out", out_flag, "Output directory (default $SLCM_OUT_DIR or .)");

    std::string nodes_text;
    std::size_t seeds = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "Constant-density sweep, one CSV row per run");
    sweep_cmd->add_option("--config", config_path, "Base scenario config")->required();
    sweep_cmd->add_option("--nodes", nodes_text, "Node counts as first..last:step")->required();
    sweep_cmd->add_option("--seeds", seeds, "Runs per node count")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", out_flag, "Output directory (default $SLCM_OUT_DIR or .)");

    std::size_t topologies = 30;
    auto* compare = app.add_subcommand("compare-broadcast", "GRI against flooding on the same topologies");
    compare->add_option("--config", config_path, "Scenario config (nodes, arena, radio_range, seed)")->required();
    compare->add_option("--seeds", topologies, "Topologies to compare")->check(CLI::PositiveNumber);

    std::size_t rounds = 0;
    std::size_t trials = 0;
    std::string cheat_text;
    std::uint64_t bench_seed = 1;
    auto* bench = app.add_subcommand("zkp-bench", "Acceptance rate of repeated ZKP sessions");
    bench->add_option("--rounds", rounds, "Rounds per session")->required()->check(CLI::PositiveNumber);
    bench->add_option("--trials", trials, "Sessions")->required()->check(CLI::PositiveNumber);
    bench->add_option("--cheat", cheat_text, "fake-graph, isomorph-without-cycle or coin-flip (honest if absent)");
    bench->add_option("--seed", bench_seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "slcm: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (run->parsed()) {
            auto cfg = load_config(config_path);
            if (seed) {
                cfg.seed = *seed;
            }
            const auto a = run_to_dir(cfg, output_dir(out_flag));
            out << csv_header() << '\n' << csv_row(a.result.summary) << '\n';
            out << "trace: " << a.trace_file.string() << '\n' << "summary: " << a.csv_file.string() << '\n';
        } else if (sweep_cmd->parsed()) {
            const auto range = parse_node_range(nodes_text);
            if (!range) {
                throw UsageError("--nodes: expected first..last:step, got '" + nodes_text + "'");
            }
            const auto base = load_config(config_path);
            const auto counts = range->values();
            for (auto n : counts) {
                validate(at_constant_density(base, n));
            }
            const auto rows = sweep(base, counts, seeds);
            const auto dir = output_dir(out_flag);
            std::filesystem::create_directories(dir);
            const auto path = dir / "sweep.csv";
            std::ofstream file(path, std::ios::binary);
            write_csv(file, rows);
            if (!file) {
                throw std::runtime_error("cannot write " + path.string());
            }
            write_csv(out, rows);
            out << "csv: " << path.string() << '\n';
        } else if (compare->parsed()) {
            const auto cfg = load_config(config_path);
            const auto c = compare_broadcast(cfg, topologies);
            if (c.seeds == 0) {
                throw std::runtime_error("no connected topology found for this config");
            }
            out << format_comparison(c);
        } else if (bench->parsed()) {
            std::optional<zkp::CheatStrategy> cheat;
            if (!cheat_text.empty()) {
                cheat = parse_cheat_strategy(cheat_text);
                if (!cheat) {
                    throw UsageError("--cheat: unknown strategy '" + cheat_text + "'");
                }
            }
            out << format_bench(zkp_bench(rounds, trials, cheat, bench_seed));
        }
    } catch (const ConfigInvalid& e) {
        err << "slcm: " << e.what() << '\n';
        return kExitConfig;
    } catch (const UsageError& e) {
        err << "slcm: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "slcm: runtime failure: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

} // namespace slcm::metrics
