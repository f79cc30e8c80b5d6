#pragma once

#include "scatter/clustering.hpp"
#include "scatter/config.hpp"
#include "scatter/representation.hpp"
#include "scatter/scattering.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace scatter {

struct WindowPlan {
    std::size_t window_len = 0;
    std::size_t hop = 0;
    std::size_t count = 0;
    std::vector<std::size_t> starts;  // starts[i] = i * hop
};

/// As many windows as fit entirely inside n samples.
WindowPlan plan_windows(std::size_t n, std::size_t window_len, std::size_t hop);

/// One row of PCA theta values per window. Row w only reads samples
/// [starts[w], starts[w] + window_len).
Matrix theta_trajectory(std::span<const double> x, const WindowPlan& plan, const PipelineConfig& config);

/// 1 + |L1| + 2 |L1||L2| + 2 |L2|; the theta block is dropped for maxpool.
std::size_t feature_dimension(const ScatteringGeometry& geometry, Reducer reducer);

/// [S0(t) | S1(t, .) | S2(t, ., .) | m(., .) | theta | Lx(t, .)], second-layer
/// index fastest within the S2 and m blocks.
std::vector<double> assemble_features(const ScatteringCoeffs& coeffs, const TransientRep& rep, std::size_t t);

/// Averages non-overlapping runs of frame_len rows; a shorter tail becomes
/// its own frame.
Matrix frame_average(const BandMatrix& series, std::size_t frame_len);

/// Inclusive [start, end] range in whatever unit the producer uses.
struct Interval {
    std::size_t start = 0;
    std::size_t end = 0;
    int cluster = 0;

    bool operator==(const Interval&) const = default;
};

/// Mean row L1 norm of a cluster over the median row L1 norm of all frames.
double cluster_contrast(std::span<const int> labels, const Matrix& frames, int cluster);

/// A transient cluster must be at least this many times as energetic as the
/// ambient (median) frame.
inline constexpr double kMinTransientContrast = 8.0;

/// Cluster with the largest (mean row L1 norm) / (fraction of frames).
/// Returns -1 when there are fewer than two clusters or that cluster's
/// contrast is below min_contrast.
int transient_cluster(std::span<const int> labels, const Matrix& frames,
                      double min_contrast = kMinTransientContrast);

/// Maximal runs of the transient cluster, in frame units; runs shorter than
/// min_frames are dropped.
std::vector<Interval> extract_intervals(std::span<const int> labels, const Matrix& frames, std::size_t min_frames = 1,
                                        double min_contrast = kMinTransientContrast);

struct DetectionResult {
    std::vector<int> labels;  // per frame
    std::size_t k = 1;
    int transient = -1;
    double contrast = 0.0;  // of the highest-ranked cluster, reported even when rejected
    std::vector<Interval> intervals;  // in samples, inclusive
    std::vector<double> silhouettes;
    std::size_t frame_len = 0;
};

}  // namespace scatter
