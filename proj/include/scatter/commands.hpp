#pragma once

#include "scatter/config.hpp"
#include "scatter/detection.hpp"
#include "scatter/io.hpp"
#include "scatter/pipeline.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace scatter {

struct AnalyzeOptions {
    bool write_s2 = true;   // one CSV per second-layer band
    bool binary_s2 = false; // raw float64 tensor plus sidecar instead of CSVs
};

/// Output subdirectory for a channel: the header name with anything outside
/// [A-Za-z0-9._-] replaced by '_', or "channel<i>" when that leaves nothing.
std::string channel_directory(const std::string& name, std::size_t index);

/// Per channel: lx.csv, theta.json, m.csv, s2 slices. Then manifest.json at
/// the root with the config, feature dimension, and every artifact's SHA-256.
void run_analyze(const SignalTable& signal, const PipelineConfig& config, const std::filesystem::path& out,
                 const AnalyzeOptions& options = {}, std::ostream* log = nullptr);

/// Per channel: detection.json, labels.csv, intervals.csv; plus manifest.json.
std::vector<DetectionResult> run_detect(const SignalTable& signal, const PipelineConfig& config,
                                        const std::filesystem::path& out, std::ostream* log = nullptr);

/// Per channel: theta_trajectory.csv (windows x |L2|); plus manifest.json.
std::vector<MonitorResult> run_monitor(const SignalTable& signal, const PipelineConfig& config,
                                       const std::filesystem::path& out, std::ostream* log = nullptr);

std::string detection_json(const DetectionResult& result, const PipelineConfig& config);
std::string labels_csv(const DetectionResult& result);
std::string intervals_csv(const DetectionResult& result);

}  // namespace scatter
