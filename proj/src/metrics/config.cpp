#include "slcm/metrics/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace slcm::metrics {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s)
{
    const std::string text(s);
    if (text.empty()) {
        return std::nullopt;
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::uint64_t> parse_unsigned(std::string_view s)
{
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        return std::nullopt;
    }
    return v;
}

// Setter returns an error message, empty on success.
using Setter = std::function<std::string(ScenarioConfig&, std::string_view)>;

Setter real(double ScenarioConfig::*field)
{
    return [field](ScenarioConfig& c, std::string_view v) -> std::string {
        const auto d = parse_double(v);
        if (!d) {
            return "expected a number, got '" + std::string(v) + "'";
        }
        c.*field = *d;
        return {};
    };
}

template <typename T>
Setter whole(T ScenarioConfig::*field)
{
    return [field](ScenarioConfig& c, std::string_view v) -> std::string {
        const auto u = parse_unsigned(v);
        if (!u) {
            return "expected a non-negative integer, got '" + std::string(v) + "'";
        }
        c.*field = static_cast<T>(*u);
        return {};
    };
}

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table{
        {"nodes", whole(&ScenarioConfig::nodes)},
        {"width", real(&ScenarioConfig::width)},
        {"height", real(&ScenarioConfig::height)},
        {"arena",
         [](ScenarioConfig& c, std::string_view v) -> std::string {
             const auto x = v.find('x');
             const auto w = x == std::string_view::npos ? std::nullopt : parse_double(trim(v.substr(0, x)));
             const auto h = x == std::string_view::npos ? std::nullopt : parse_double(trim(v.substr(x + 1)));
             if (!w || !h) {
                 return "expected WIDTHxHEIGHT, got '" + std::string(v) + "'";
             }
             c.width = *w;
             c.height = *h;
             return {};
         }},
        {"duration", real(&ScenarioConfig::duration)},
        {"insert_prob", real(&ScenarioConfig::insert_prob)},
        {"delete_prob", real(&ScenarioConfig::delete_prob)},
        {"speed_min", real(&ScenarioConfig::speed_min)},
        {"speed_max", real(&ScenarioConfig::speed_max)},
        {"radio_range", real(&ScenarioConfig::radio_range)},
        {"broadcast_mode",
         [](ScenarioConfig& c, std::string_view v) -> std::string {
             const auto m = parse_broadcast_mode(v);
             if (!m) {
                 return "expected gri or flood, got '" + std::string(v) + "'";
             }
             c.broadcast_mode = *m;
             return {};
         }},
        {"zkp_rounds", whole(&ScenarioConfig::zkp_rounds)},
        {"seed", whole(&ScenarioConfig::seed)},
        {"epsilon", real(&ScenarioConfig::epsilon)},
        {"n_min", whole(&ScenarioConfig::n_min)},
        {"degree", whole(&ScenarioConfig::degree)},
        {"pol_period", real(&ScenarioConfig::pol_period)},
        {"off_prob", real(&ScenarioConfig::off_prob)},
        {"mean_off_time", real(&ScenarioConfig::mean_off_time)},
        {"hop_latency", real(&ScenarioConfig::hop_latency)},
        {"processing_delay", real(&ScenarioConfig::processing_delay)},
        {"loss_prob", real(&ScenarioConfig::loss_prob)},
        {"mobility_step", real(&ScenarioConfig::mobility_step)},
        {"group_size", whole(&ScenarioConfig::group_size)},
    };
    return table;
}

std::string describe(const std::vector<FieldIssue>& issues)
{
    std::string out = "ConfigInvalid:";
    for (const auto& i : issues) {
        out += " " + i.field + ": " + i.message + ";";
    }
    if (!issues.empty()) {
        out.pop_back();
    }
    return out;
}

} // namespace

std::string_view to_string(BroadcastMode m)
{
    return m == BroadcastMode::Gri ? "gri" : "flood";
}

std::optional<BroadcastMode> parse_broadcast_mode(std::string_view s)
{
    if (s == "gri") {
        return BroadcastMode::Gri;
    }
    if (s == "flood") {
        return BroadcastMode::Flood;
    }
    return std::nullopt;
}

ConfigInvalid::ConfigInvalid(std::vector<FieldIssue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues))
{
}

std::vector<FieldIssue> check_config(const ScenarioConfig& c)
{
    std::vector<FieldIssue> out;
    const auto require = [&](bool ok, const char* field, std::string message) {
        if (!ok) {
            out.push_back({field, std::move(message)});
        }
    };
    const auto probability = [&](double p, const char* field) {
        require(p >= 0.0 && p <= 1.0, field, fmt::format("must lie in [0, 1], got {}", p));
    };

    require(c.nodes >= 5 && c.nodes <= 500, "nodes", fmt::format("must lie in [5, 500], got {}", c.nodes));
    require(c.width > 0.0, "width", "must be positive");
    require(c.height > 0.0, "height", "must be positive");
    require(c.duration > 0.0, "duration", "must be positive");
    probability(c.insert_prob, "insert_prob");
    probability(c.delete_prob, "delete_prob");
    probability(c.off_prob, "off_prob");
    probability(c.loss_prob, "loss_prob");
    require(c.speed_min >= 0.0, "speed_min", "must be non-negative");
    require(c.speed_min <= c.speed_max, "speed_max",
            fmt::format("must be at least speed_min ({} > {})", c.speed_min, c.speed_max));
    require(c.radio_range > 0.0, "radio_range", "must be positive");
    require(c.zkp_rounds >= 1, "zkp_rounds", "must be at least 1");
    require(c.epsilon > 0.0, "epsilon", "must be positive");
    require(c.n_min >= 3 && c.n_min <= c.nodes, "n_min",
            fmt::format("must lie in [3, nodes], got {}", c.n_min));
    require(c.degree >= 2 && c.degree < c.nodes, "degree",
            fmt::format("must lie in [2, nodes - 1], got {}", c.degree));
    require(c.degree * c.nodes % 2 == 0, "degree",
            fmt::format("DegreeNotIntegral: degree x nodes must be even ({} x {})", c.degree, c.nodes));
    require(c.pol_period > 0.0, "pol_period", "must be positive");
    require(c.mean_off_time > 0.0, "mean_off_time", "must be positive");
    require(c.hop_latency > 0.0, "hop_latency", "must be positive");
    require(c.processing_delay >= 0.0, "processing_delay", "must be non-negative");
    require(c.mobility_step > 0.0, "mobility_step", "must be positive");
    require(c.group_size >= 2, "group_size", "must be at least 2");
    return out;
}

void validate(const ScenarioConfig& cfg)
{
    auto issues = check_config(cfg);
    if (!issues.empty()) {
        throw ConfigInvalid(std::move(issues));
    }
}

ScenarioConfig parse_config(std::istream& in)
{
    ScenarioConfig cfg;
    std::vector<FieldIssue> issues;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view text(line);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            issues.push_back({fmt::format("line {}", number), "expected key = value"});
            continue;
        }
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            issues.push_back({std::string(key), fmt::format("unknown key at line {}", number)});
            continue;
        }
        if (auto err = it->second(cfg, value); !err.empty()) {
            issues.push_back({std::string(key), std::move(err)});
        }
    }
    if (issues.empty()) {
        issues = check_config(cfg);
    }
    if (!issues.empty()) {
        throw ConfigInvalid(std::move(issues));
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigInvalid({{"config", "cannot open " + path.string()}});
    }
    return parse_config(in);
}

std::string format_config(const ScenarioConfig& c)
{
    std::string out;
    const auto put = [&out](std::string_view key, const auto& value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    put("nodes", c.nodes);
    put("width", c.width);
    put("height", c.height);
    put("duration", c.duration);
    put("insert_prob", c.insert_prob);
    put("delete_prob", c.delete_prob);
    put("speed_min", c.speed_min);
    put("speed_max", c.speed_max);
    put("radio_range", c.radio_range);
    put("broadcast_mode", to_string(c.broadcast_mode));
    put("zkp_rounds", c.zkp_rounds);
    put("seed", c.seed);
    put("epsilon", c.epsilon);
    put("n_min", c.n_min);
    put("degree", c.degree);
    put("pol_period", c.pol_period);
    put("off_prob", c.off_prob);
    put("mean_off_time", c.mean_off_time);
    put("hop_latency", c.hop_latency);
    put("processing_delay", c.processing_delay);
    put("loss_prob", c.loss_prob);
    put("mobility_step", c.mobility_step);
    put("group_size", c.group_size);
    return out;
}

} // namespace slcm::metrics
