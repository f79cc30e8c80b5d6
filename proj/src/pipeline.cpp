#include "scatter/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

namespace scatter {

Analysis analyze_signal(std::span<const double> x, const PipelineConfig& config, bool keep_u2, bool keep_rx)
{
    validate(config);
    if (x.empty()) throw std::invalid_argument("empty signal");
    const auto plan = plan_scattering(x.size(), config.geometry());
    Analysis a;
    a.coeffs = scattering_transform(x, plan, {Exec::parallel, keep_u2});
    a.rep = build_transient_rep(a.coeffs.s2, config.p, config.reducer, Exec::parallel, keep_rx);
    return a;
}

Matrix clustering_frames(const Analysis& analysis, const PipelineConfig& config)
{
    if (config.cluster_on == ClusterInput::lx) return frame_average(analysis.rep.lx, config.frame_len);

    // Frame means of the full feature vector, one sample at a time.
    const std::size_t n = analysis.coeffs.s0.size();
    const std::size_t frames = (n + config.frame_len - 1) / config.frame_len;
    Matrix out;
    for (std::size_t f = 0; f < frames; ++f) {
        const std::size_t begin = f * config.frame_len;
        const std::size_t end = std::min(n, begin + config.frame_len);
        std::vector<double> sum;
        for (std::size_t t = begin; t < end; ++t) {
            const auto v = assemble_features(analysis.coeffs, analysis.rep, t);
            if (sum.empty()) sum.assign(v.size(), 0.0);
            for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
        }
        if (f == 0) out = Matrix(frames, sum.size());
        const double count = static_cast<double>(end - begin);
        for (std::size_t i = 0; i < sum.size(); ++i) out(f, i) = sum[i] / count;
    }
    return out;
}

DetectionResult detect_transients(const Analysis& analysis, std::size_t n, const PipelineConfig& config)
{
    const auto frames = clustering_frames(analysis, config);
    DetectionResult result;
    result.frame_len = config.frame_len;
    if (frames.rows() < 2) {
        result.labels.assign(frames.rows(), 0);
        return result;
    }

    auto clusters = cluster_frames(frames, config.k_max, config.seed);
    result.k = clusters.k;
    result.silhouettes = std::move(clusters.silhouettes);
    result.labels = std::move(clusters.labels);
    result.transient = transient_cluster(result.labels, frames);
    if (result.k > 1) {
        int top = 0;
        double best = -1.0;
        // Report the contrast of the strongest cluster even when it is rejected.
        for (int c = 0; c < static_cast<int>(result.k); ++c) {
            const double v = cluster_contrast(result.labels, frames, c);
            if (v > best) {
                best = v;
                top = c;
            }
        }
        result.contrast = cluster_contrast(result.labels, frames, top);
    }

    const std::size_t min_frames = std::max<std::size_t>(1, (config.min_duration + config.frame_len - 1) / config.frame_len);
    for (const auto& run : extract_intervals(result.labels, frames, min_frames)) {
        const std::size_t start = run.start * config.frame_len;
        const std::size_t end = std::min((run.end + 1) * config.frame_len, n) - 1;
        result.intervals.push_back({start, end, run.cluster});
    }
    return result;
}

DetectionResult detect_transients(std::span<const double> x, const PipelineConfig& config)
{
    return detect_transients(analyze_signal(x, config), x.size(), config);
}

MonitorResult monitor_signal(std::span<const double> x, const PipelineConfig& config)
{
    validate(config);
    MonitorResult r;
    r.windows = plan_windows(x.size(), config.window_len, config.hop);
    r.theta = theta_trajectory(x, r.windows, config);
    return r;
}

}  // namespace scatter
