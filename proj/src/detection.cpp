#include "scatter/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scatter {

WindowPlan plan_windows(std::size_t n, std::size_t window_len, std::size_t hop)
{
    if (window_len < 2) throw std::invalid_argument("window_len must be at least 2");
    if (hop < 1 || hop > window_len) throw std::invalid_argument("hop must be in [1, window_len]");
    if (n < window_len) throw std::invalid_argument("signal shorter than window");

    WindowPlan plan{window_len, hop, (n - window_len) / hop + 1, {}};
    plan.starts.reserve(plan.count);
    for (std::size_t i = 0; i < plan.count; ++i) plan.starts.push_back(i * hop);
    return plan;
}

Matrix theta_trajectory(std::span<const double> x, const WindowPlan& plan, const PipelineConfig& config)
{
    if (config.reducer != Reducer::pca) throw std::invalid_argument("theta trajectory requires the pca reducer");
    if (plan.count == 0) return {};
    if (plan.starts.back() + plan.window_len > x.size()) throw std::invalid_argument("signal shorter than window");

    const auto scattering = plan_scattering(plan.window_len, config.geometry());
    Matrix out(plan.count, scattering.bank2.band_count());
    for (std::size_t w = 0; w < plan.count; ++w) {
        const auto window = x.subspan(plan.starts[w], plan.window_len);
        const auto coeffs = scattering_transform(window, scattering, {Exec::parallel, false});
        const auto rep = build_transient_rep(coeffs.s2, config.p, Reducer::pca, Exec::parallel, false);
        std::copy(rep.theta.begin(), rep.theta.end(), out.row(w).begin());
    }
    return out;
}

std::size_t feature_dimension(const ScatteringGeometry& g, Reducer reducer)
{
    const auto bands1 = static_cast<std::size_t>(g.j1 * g.q1);
    const auto bands2 = static_cast<std::size_t>(g.j2 * g.q2);
    const std::size_t theta = reducer == Reducer::pca ? bands2 : 0;
    return 1 + bands1 + 2 * bands1 * bands2 + bands2 + theta;
}

std::vector<double> assemble_features(const ScatteringCoeffs& coeffs, const TransientRep& rep, std::size_t t)
{
    if (t >= coeffs.s0.size()) throw std::out_of_range("frame index out of range");
    const std::size_t bands1 = coeffs.s1.bands();
    const std::size_t bands2 = coeffs.s2.inner();

    std::vector<double> v;
    v.reserve(1 + bands1 + 2 * bands1 * bands2 + 2 * bands2);
    v.push_back(coeffs.s0[t]);
    for (std::size_t i = 0; i < bands1; ++i) v.push_back(coeffs.s1.at(t, i));
    for (std::size_t i = 0; i < bands1; ++i)
        for (std::size_t j = 0; j < bands2; ++j) v.push_back(coeffs.s2.at(t, i, j));
    for (std::size_t i = 0; i < bands1; ++i)
        for (std::size_t j = 0; j < bands2; ++j) v.push_back(rep.thresholds(i, j));
    if (rep.reducer == Reducer::pca) v.insert(v.end(), rep.theta.begin(), rep.theta.end());
    for (std::size_t j = 0; j < bands2; ++j) v.push_back(rep.lx.at(t, j));
    return v;
}

Matrix frame_average(const BandMatrix& series, std::size_t frame_len)
{
    if (frame_len == 0) throw std::invalid_argument("frame_len must be at least 1");
    const std::size_t n = series.length();
    const std::size_t frames = (n + frame_len - 1) / frame_len;
    Matrix out(frames, series.bands());
    for (std::size_t b = 0; b < series.bands(); ++b) {
        const auto band = series.band(b);
        for (std::size_t f = 0; f < frames; ++f) {
            const std::size_t begin = f * frame_len;
            const std::size_t end = std::min(n, begin + frame_len);
            double sum = 0.0;
            for (std::size_t t = begin; t < end; ++t) sum += band[t];
            out(f, b) = sum / static_cast<double>(end - begin);
        }
    }
    return out;
}

namespace {

std::vector<double> row_norms(const Matrix& frames)
{
    std::vector<double> norms(frames.rows(), 0.0);
    for (std::size_t f = 0; f < frames.rows(); ++f)
        for (double v : frames.row(f)) norms[f] += std::abs(v);
    return norms;
}

double contrast_of(std::span<const int> labels, const std::vector<double>& norms, int cluster)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t f = 0; f < labels.size(); ++f)
        if (labels[f] == cluster) {
            sum += norms[f];
            ++count;
        }
    if (count == 0) return 0.0;
    const double mean = sum / static_cast<double>(count);
    const double ambient = quickselect_median(norms);
    if (ambient > 0.0) return mean / ambient;
    return mean > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

int ranked_cluster(std::span<const int> labels, const std::vector<double>& norms)
{
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    if (k < 2) return -1;

    std::vector<double> energy(static_cast<std::size_t>(k), 0.0);
    std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
    for (std::size_t f = 0; f < labels.size(); ++f) {
        energy[static_cast<std::size_t>(labels[f])] += norms[f];
        ++count[static_cast<std::size_t>(labels[f])];
    }

    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    const auto total = static_cast<double>(labels.size());
    for (std::size_t c = 0; c < energy.size(); ++c) {
        if (count[c] == 0) continue;
        const double mean = energy[c] / static_cast<double>(count[c]);
        const double occupancy = static_cast<double>(count[c]) / total;
        const double score = mean / occupancy;
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(c);
        }
    }
    return best;
}

void check_shapes(std::span<const int> labels, const Matrix& frames)
{
    if (labels.size() != frames.rows()) throw std::invalid_argument("labels/frames length mismatch");
    for (int l : labels)
        if (l < 0) throw std::invalid_argument("negative cluster label");
}

}  // namespace

double cluster_contrast(std::span<const int> labels, const Matrix& frames, int cluster)
{
    check_shapes(labels, frames);
    return contrast_of(labels, row_norms(frames), cluster);
}

int transient_cluster(std::span<const int> labels, const Matrix& frames, double min_contrast)
{
    check_shapes(labels, frames);
    if (labels.empty()) return -1;
    const auto norms = row_norms(frames);
    const int best = ranked_cluster(labels, norms);
    if (best < 0 || contrast_of(labels, norms, best) < min_contrast) return -1;
    return best;
}

std::vector<Interval> extract_intervals(std::span<const int> labels, const Matrix& frames, std::size_t min_frames,
                                        double min_contrast)
{
    const int target = transient_cluster(labels, frames, min_contrast);
    std::vector<Interval> out;
    if (target < 0) return out;
    for (std::size_t f = 0; f < labels.size();) {
        if (labels[f] != target) {
            ++f;
            continue;
        }
        std::size_t end = f;
        while (end + 1 < labels.size() && labels[end + 1] == target) ++end;
        if (end - f + 1 >= min_frames) out.push_back({f, end, target});
        f = end + 1;
    }
    return out;
}

}  // namespace scatter
