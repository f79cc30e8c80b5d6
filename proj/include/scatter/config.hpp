#pragma once

#include "scatter/representation.hpp"
#include "scatter/scattering.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace scatter {

/// Malformed or unreadable user input (files, flags, config). The CLI maps
/// this to exit code 2; every other failure is a pipeline error.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ClusterInput { lx, features };

struct PipelineConfig {
    int J1 = 2;
    int Q1 = 10;
    int J2 = 2;
    int Q2 = 10;
    double p = 2.0;
    Reducer reducer = Reducer::pca;
    std::size_t window_len = 60000;
    std::size_t hop = 2000;
    std::size_t k_max = 6;
    std::size_t frame_len = 100;
    std::size_t min_duration = 20;  // samples; 20 ms at 1 kHz
    std::uint64_t seed = 0;
    double sample_rate_hz = 1000.0;
    ClusterInput cluster_on = ClusterInput::lx;

    ScatteringGeometry geometry() const { return {J1, Q1, J2, Q2}; }

    bool operator==(const PipelineConfig&) const = default;
};

/// Throws InputError naming the offending field.
void validate(const PipelineConfig& config);

/// Flat `key = value` text; `#` starts a comment. Keys are the field names
/// above. Unknown keys and unparsable values are input errors.
PipelineConfig parse_config(std::string_view text);
PipelineConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const PipelineConfig& config);

/// Applies one `key = value` assignment.
void set_config_value(PipelineConfig& config, std::string_view key, std::string_view value);

}  // namespace scatter
