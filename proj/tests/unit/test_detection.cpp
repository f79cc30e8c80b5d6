#include "scatter/detection.hpp"
#include "scatter/oracles.hpp"
#include "scatter/pipeline.hpp"
#include "scatter/synth.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace scatter;

namespace {

PipelineConfig small_config()
{
    PipelineConfig c;
    c.window_len = 4096;
    c.hop = 4096;
    return c;
}

Matrix frames_from(std::initializer_list<double> row_energy)
{
    Matrix m(row_energy.size(), 2);
    std::size_t i = 0;
    for (double e : row_energy) {
        m(i, 0) = e / 2;
        m(i, 1) = e / 2;
        ++i;
    }
    return m;
}

double row_l1(const Matrix& m, std::size_t a, std::size_t b)
{
    double s = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::abs(m(a, c) - m(b, c));
    return s;
}

}  // namespace

TEST(Windows, PlanExamples)
{
    const auto p = plan_windows(10, 4, 2);
    EXPECT_EQ(p.count, 4u);
    EXPECT_EQ(p.starts, (std::vector<std::size_t>{0, 2, 4, 6}));
    EXPECT_EQ(plan_windows(180000, 60000, 2000).count, 61u);
    const auto tiled = plan_windows(12, 4, 4);
    EXPECT_EQ(tiled.starts, (std::vector<std::size_t>{0, 4, 8}));
    EXPECT_THROW(plan_windows(3, 4, 2), std::invalid_argument);
    EXPECT_THROW(plan_windows(10, 4, 5), std::invalid_argument);
    EXPECT_THROW(plan_windows(10, 4, 0), std::invalid_argument);
}

TEST(Features, DimensionMatchesCountedFormulaOverSweep)
{
    for (int j1 = 1; j1 <= 3; ++j1)
        for (int j2 = 1; j2 <= 3; ++j2)
            for (int q1 = 1; q1 <= 4; ++q1)
                for (int q2 = 1; q2 <= 4; ++q2)
                    for (bool pca : {true, false})
                        EXPECT_EQ(feature_dimension({j1, q1, j2, q2}, pca ? Reducer::pca : Reducer::maxpool),
                                  oracle::counted_feature_dimension(j1, q1, j2, q2, pca));
    EXPECT_EQ(feature_dimension({2, 10, 2, 10}, Reducer::pca), 861u);
    EXPECT_EQ(feature_dimension({2, 10, 2, 10}, Reducer::maxpool), 841u);
    EXPECT_EQ(feature_dimension({1, 1, 1, 1}, Reducer::pca), 6u);
}

TEST(Features, AssembledVectorLayout)
{
    std::mt19937_64 rng(41);
    const auto x = testing_support::gaussian(600, rng);
    PipelineConfig c;
    c.J1 = c.Q1 = c.J2 = c.Q2 = 1;
    const auto a = analyze_signal(x, c);
    const auto v = assemble_features(a.coeffs, a.rep, 10);
    ASSERT_EQ(v.size(), 6u);
    EXPECT_EQ(v[0], a.coeffs.s0[10]);
    EXPECT_EQ(v[1], a.coeffs.s1.at(10, 0));
    EXPECT_EQ(v[2], a.coeffs.s2.at(10, 0, 0));
    EXPECT_EQ(v[3], a.rep.thresholds(0, 0));
    EXPECT_EQ(v[4], a.rep.theta[0]);
    EXPECT_EQ(v[5], a.rep.lx.at(10, 0));
    EXPECT_THROW(assemble_features(a.coeffs, a.rep, 600), std::out_of_range);

    c.reducer = Reducer::maxpool;
    const auto m = analyze_signal(x, c);
    EXPECT_EQ(assemble_features(m.coeffs, m.rep, 0).size(), 5u);
}

TEST(Features, BaselineLengthIs861)
{
    std::mt19937_64 rng(42);
    const auto x = testing_support::gaussian(300, rng);
    const auto a = analyze_signal(x, PipelineConfig{});
    EXPECT_EQ(assemble_features(a.coeffs, a.rep, 0).size(), 861u);
}

TEST(Frames, AverageIncludesTail)
{
    BandMatrix s(5, 1);
    for (std::size_t t = 0; t < 5; ++t) s.at(t, 0) = static_cast<double>(t);
    const auto f = frame_average(s, 2);
    ASSERT_EQ(f.rows(), 3u);
    EXPECT_EQ(f(0, 0), 0.5);
    EXPECT_EQ(f(1, 0), 2.5);
    EXPECT_EQ(f(2, 0), 4.0);
    EXPECT_THROW(frame_average(s, 0), std::invalid_argument);
}

TEST(Intervals, RunLengthExample)
{
    const std::vector<int> labels{0, 0, 1, 1, 0, 1};
    const auto frames = frames_from({1, 1, 20, 20, 1, 20});
    EXPECT_EQ(transient_cluster(labels, frames), 1);
    const auto iv = extract_intervals(labels, frames);
    ASSERT_EQ(iv.size(), 2u);
    EXPECT_EQ(iv[0], (Interval{2, 3, 1}));
    EXPECT_EQ(iv[1], (Interval{5, 5, 1}));
    // Minimum duration drops the single-frame run.
    EXPECT_EQ(extract_intervals(labels, frames, 2).size(), 1u);
}

TEST(Intervals, SingleClusterDetectsNothing)
{
    const std::vector<int> labels(6, 0);
    EXPECT_EQ(transient_cluster(labels, frames_from({1, 2, 3, 4, 5, 6})), -1);
    EXPECT_TRUE(extract_intervals(labels, frames_from({1, 2, 3, 4, 5, 6})).empty());
}

TEST(Intervals, WeakContrastIsRejected)
{
    const std::vector<int> labels{0, 0, 1, 1, 0, 1};
    const auto frames = frames_from({1, 1, 2, 2, 1, 2});
    EXPECT_NEAR(cluster_contrast(labels, frames, 1), 2.0, 1e-15);
    EXPECT_EQ(transient_cluster(labels, frames), -1);
    EXPECT_EQ(transient_cluster(labels, frames, 1.5), 1);
}

TEST(Intervals, InvariantUnderRelabelling)
{
    std::mt19937_64 rng(43);
    const std::vector<int> labels{0, 0, 2, 2, 1, 1, 0, 2, 0, 1, 0, 0};
    const auto frames = frames_from({1, 1, 40, 38, 5, 6, 1, 45, 1, 5, 1, 1});
    const auto base = extract_intervals(labels, frames);
    ASSERT_FALSE(base.empty());
    std::vector<int> map{0, 1, 2};
    do {
        std::vector<int> relabelled(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) relabelled[i] = map[static_cast<std::size_t>(labels[i])];
        const auto got = extract_intervals(relabelled, frames);
        ASSERT_EQ(got.size(), base.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            EXPECT_EQ(got[i].start, base[i].start);
            EXPECT_EQ(got[i].end, base[i].end);
        }
    } while (std::next_permutation(map.begin(), map.end()));
}

TEST(Intervals, ShapeErrors)
{
    EXPECT_THROW(extract_intervals(std::vector<int>{0, 1}, frames_from({1, 2, 3})), std::invalid_argument);
    EXPECT_THROW(extract_intervals(std::vector<int>{0, -1, 1}, frames_from({1, 2, 3})), std::invalid_argument);
}

TEST(Trajectory, ZeroSignalGivesZeroRows)
{
    const auto c = small_config();
    const std::vector<double> x(3 * 4096, 0.0);
    const auto r = monitor_signal(x, c);
    EXPECT_EQ(r.theta.rows(), 3u);
    for (double v : r.theta.values()) EXPECT_EQ(v, 0.0);
}

TEST(Trajectory, RowsEqualPlanCountWhenTiled)
{
    auto c = small_config();
    std::mt19937_64 rng(44);
    const auto x = testing_support::gaussian(4 * 4096 + 100, rng);
    const auto r = monitor_signal(x, c);
    EXPECT_EQ(r.theta.rows(), plan_windows(x.size(), 4096, 4096).count);
    EXPECT_EQ(r.theta.cols(), 20u);
}

TEST(Trajectory, RequiresPcaAndEnoughSamples)
{
    auto c = small_config();
    EXPECT_THROW(monitor_signal(std::vector<double>(100, 1.0), c), std::invalid_argument);
    c.reducer = Reducer::maxpool;
    EXPECT_THROW(monitor_signal(std::vector<double>(8192, 1.0), c), std::invalid_argument);
}

TEST(Trajectory, StationaryNoiseRowsAgree)
{
    // Full-size 60000-sample windows; shorter ones let the per-band variance fractions
    // wander further than the bound.
    PipelineConfig c;
    c.hop = 30000;
    std::mt19937_64 rng(45);
    const auto x = testing_support::gaussian(150000, rng);
    const auto r = monitor_signal(x, c);
    double worst = 0.0;
    for (std::size_t w = 1; w < r.theta.rows(); ++w) worst = std::max(worst, row_l1(r.theta, w, w - 1));
    EXPECT_LE(worst, 0.3);
}

TEST(Trajectory, BurstRaisesItsWindowOnly)
{
    const auto c = small_config();
    std::mt19937_64 rng(46);
    auto x = testing_support::gaussian(4 * 4096, rng, 0.1);
    SynthParams p;
    p.length = 4096;
    p.count = 1;
    p.seed = 3;
    const auto burst = synthesize(p);
    // Only the injected transient, centred in window 2.
    std::vector<double> shape(4096);
    for (std::size_t t = 0; t < 4096; ++t) shape[t] = burst.samples[t];
    const auto noise_only = [&] {
        SynthParams q = p;
        q.kind = SynthKind::noise;
        return synthesize(q).samples;
    }();
    for (std::size_t t = 0; t < 4096; ++t) x[2 * 4096 + t] += 3.0 * (shape[t] - noise_only[t]);
    const auto r = monitor_signal(x, c);
    auto row_max = [&](std::size_t w) {
        double m = 0.0;
        for (double v : r.theta.row(w)) m = std::max(m, v);
        return m;
    };
    for (std::size_t w : {0u, 1u, 3u}) EXPECT_GT(row_max(2), row_max(w));
}

TEST(Trajectory, CausalWindows)
{
    auto c = small_config();
    c.hop = 2048;
    std::mt19937_64 rng(47);
    const auto x = testing_support::gaussian(5 * 4096, rng);
    const auto plan = plan_windows(x.size(), c.window_len, c.hop);
    const auto base = theta_trajectory(x, plan, c);
    std::uniform_int_distribution<std::size_t> pick(0, plan.count - 1);
    for (int trial = 0; trial < 3; ++trial) {
        const std::size_t w = pick(rng);
        auto y = x;
        const std::size_t from = plan.starts[w] + plan.window_len;
        for (std::size_t t = from; t < y.size(); ++t) y[t] += 5.0 * std::sin(0.7 * t);
        const auto got = theta_trajectory(y, plan, c);
        for (std::size_t k = 0; k <= w; ++k)
            if (plan.starts[k] + plan.window_len <= from) {
                EXPECT_TRUE(std::equal(got.row(k).begin(), got.row(k).end(), base.row(k).begin())) << k;
            }
    }
}

TEST(Detection, SyntheticBurstsFoundNoiseIgnored)
{
    SynthParams p;
    p.length = 32768;
    p.count = 4;
    p.seed = 2;
    const auto sig = synthesize(p);
    PipelineConfig c;
    const auto r = detect_transients(sig.samples, c);
    EXPECT_EQ(r.intervals.size(), 4u);
    for (const auto& iv : r.intervals) {
        bool hit = false;
        for (const auto& e : sig.events) hit = hit || (iv.start <= e.end && e.start <= iv.end);
        EXPECT_TRUE(hit) << iv.start << ".." << iv.end;
    }

    p.kind = SynthKind::noise;
    const auto noise = synthesize(p);
    const auto quiet = detect_transients(noise.samples, c);
    EXPECT_TRUE(quiet.intervals.empty());
    EXPECT_EQ(quiet.transient, -1);
}

TEST(Detection, FeatureClusteringRuns)
{
    SynthParams p;
    p.length = 8192;
    p.count = 2;
    p.seed = 4;
    const auto sig = synthesize(p);
    PipelineConfig c;
    c.cluster_on = ClusterInput::features;
    const auto a = analyze_signal(sig.samples, c);
    const auto frames = clustering_frames(a, c);
    EXPECT_EQ(frames.rows(), (8192 + 99) / 100);
    EXPECT_EQ(frames.cols(), 861u);
    const auto r = detect_transients(a, sig.samples.size(), c);
    EXPECT_EQ(r.labels.size(), frames.rows());
}

TEST(Detection, Deterministic)
{
    SynthParams p;
    p.length = 16384;
    p.count = 2;
    p.seed = 9;
    const auto sig = synthesize(p);
    const auto a = detect_transients(sig.samples, PipelineConfig{});
    const auto b = detect_transients(sig.samples, PipelineConfig{});
    EXPECT_EQ(a.labels, b.labels);
    EXPECT_EQ(a.intervals, b.intervals);
}
