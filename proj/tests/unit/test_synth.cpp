#include "scatter/oracles.hpp"
#include "scatter/synth.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>

using namespace scatter;

TEST(Synth, BurstKindHasRequestedEventsAboveThreshold)
{
    SynthParams p;
    p.count = 5;
    p.seed = 5;
    const auto s = synthesize(p);
    ASSERT_EQ(s.samples.size(), 131072u);
    ASSERT_EQ(s.events.size(), 5u);
    EXPECT_NEAR(s.threshold, 3.0 * s.background_mad, 1e-15);
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const auto& e = s.events[i];
        EXPECT_GT(e.amplitude, s.threshold);
        EXPECT_LE(e.start, e.peak);
        EXPECT_LE(e.peak, e.end);
        if (i > 0) {
            EXPECT_GT(e.start, s.events[i - 1].end);
        }
        double peak = 0.0;
        for (std::size_t t = e.start; t <= e.end; ++t) peak = std::max(peak, std::abs(s.samples[t]));
        EXPECT_GT(peak, s.threshold);
    }
    const auto truth = nlohmann::json::parse(synth_truth_json(p, s));
    EXPECT_EQ(truth["events"].size(), 5u);
    EXPECT_EQ(truth["kind"], "burst");
}

TEST(Synth, SameSeedSameSignal)
{
    SynthParams p;
    p.length = 5000;
    p.count = 3;
    p.seed = 77;
    EXPECT_EQ(synthesize(p).samples, synthesize(p).samples);
    auto q = p;
    q.seed = 78;
    EXPECT_NE(synthesize(p).samples, synthesize(q).samples);
}

TEST(Synth, PinkNoiseSlope)
{
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        std::mt19937_64 rng(seed);
        const auto x = colored_noise(1 << 14, 1.0, rng);
        const double slope = oracle::periodogram_slope(x, 1024, 0.005, 0.25);
        EXPECT_NEAR(slope, -1.0, 0.3) << seed;
    }
    std::mt19937_64 rng(4);
    const auto white = colored_noise(1 << 14, 0.0, rng);
    EXPECT_NEAR(oracle::periodogram_slope(white, 1024, 0.005, 0.25), 0.0, 0.3);
}

TEST(Synth, NoiseIsZeroMeanUnitVariance)
{
    std::mt19937_64 rng(6);
    const auto x = colored_noise(10000, 1.0, rng);
    double mean = 0.0, var = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (double v : x) var += (v - mean) * (v - mean);
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(var / static_cast<double>(x.size()), 1.0, 1e-12);
}

TEST(Synth, RegimeEventsStartAfterSwitch)
{
    SynthParams p;
    p.kind = SynthKind::regime;
    p.length = 60000;
    p.switch_at = 40000;
    p.seed = 8;
    const auto s = synthesize(p);
    EXPECT_GT(s.events.size(), 10u);
    for (const auto& e : s.events) EXPECT_GE(e.peak, 40000u);
}

TEST(Synth, ChirpAndValidation)
{
    SynthParams p;
    p.kind = SynthKind::chirp;
    p.length = 2048;
    EXPECT_EQ(synthesize(p).samples.size(), 2048u);
    EXPECT_TRUE(synthesize(p).events.empty());
    p.f_high = 0.6;
    EXPECT_THROW(synthesize(p), std::invalid_argument);
    SynthParams crowded;
    crowded.length = 1000;
    crowded.count = 50;
    EXPECT_THROW(synthesize(crowded), std::invalid_argument);
    EXPECT_EQ(parse_synth_kind("regime"), SynthKind::regime);
    EXPECT_THROW(parse_synth_kind("sine"), std::invalid_argument);
}

TEST(Synth, MedianAbsDeviation)
{
    EXPECT_EQ(median_abs_deviation({1, 2, 3, 4, 100}), 1.0);
}
