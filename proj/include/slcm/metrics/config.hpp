#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slcm::metrics {

enum class BroadcastMode { Gri, Flood };

std::string_view to_string(BroadcastMode m);
std::optional<BroadcastMode> parse_broadcast_mode(std::string_view s);

struct ScenarioConfig {
    std::size_t nodes{20};
    double width{500.0};
    double height{500.0};
    double duration{120.0};
    double insert_prob{0.02}; // per second, network wide
    double delete_prob{0.01}; // per second, network wide
    double speed_min{0.0};
    double speed_max{1.0};
    double radio_range{220.0};
    BroadcastMode broadcast_mode{BroadcastMode::Gri};
    std::size_t zkp_rounds{20};
    std::uint64_t seed{1};
    double epsilon{1.0};
    std::size_t n_min{5};

    std::size_t degree{6};        // 2m/n of the group graph
    double pol_period{10.0};      // T starts at 3 x pol_period, never below 2 x
    double off_prob{0.0001};      // per node per second
    double mean_off_time{15.0};   // exponential
    double hop_latency{0.010};
    double processing_delay{0.001};
    double loss_prob{0.0};
    double mobility_step{1.0};
    std::size_t group_size{4};    // neighbour group of an inserted vertex
};

struct FieldIssue {
    std::string field;
    std::string message;
};

class ConfigInvalid : public std::runtime_error {
public:
    explicit ConfigInvalid(std::vector<FieldIssue> issues);

    const std::vector<FieldIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<FieldIssue> issues_;
};

/// Every violated invariant, empty if the config is usable.
std::vector<FieldIssue> check_config(const ScenarioConfig& cfg);

/// Throws ConfigInvalid listing every violated invariant.
void validate(const ScenarioConfig& cfg);

/// Flat `key = value` lines, `#` starts a comment. Unknown keys, malformed
/// values and invariant violations throw ConfigInvalid.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Round-trips through parse_config.
std::string format_config(const ScenarioConfig& cfg);

} // namespace slcm::metrics
