#pragma once

#include "scatter/config.hpp"
#include "scatter/detection.hpp"
#include "scatter/representation.hpp"
#include "scatter/scattering.hpp"

#include <span>

namespace scatter {

struct Analysis {
    ScatteringCoeffs coeffs;
    TransientRep rep;
};

/// Scattering plus the transient representation for one channel. U2 and Rx
/// are dropped unless asked for; they dominate memory on long signals.
Analysis analyze_signal(std::span<const double> x, const PipelineConfig& config, bool keep_u2 = false,
                        bool keep_rx = false);

/// Rows to cluster, one per frame of config.frame_len samples.
Matrix clustering_frames(const Analysis& analysis, const PipelineConfig& config);

/// Clusters frames, picks the transient cluster, and reports its runs in
/// samples. Runs shorter than min_duration samples are dropped.
DetectionResult detect_transients(std::span<const double> x, const PipelineConfig& config);
DetectionResult detect_transients(const Analysis& analysis, std::size_t n, const PipelineConfig& config);

struct MonitorResult {
    WindowPlan windows;
    Matrix theta;  // windows x |L2|
};

MonitorResult monitor_signal(std::span<const double> x, const PipelineConfig& config);

}  // namespace scatter
