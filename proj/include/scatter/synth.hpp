#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace scatter {

enum class SynthKind { noise, burst, chirp, regime };

SynthKind parse_synth_kind(std::string_view text);
std::string_view to_string(SynthKind kind);

struct SynthParams {
    SynthKind kind = SynthKind::burst;
    std::size_t length = 131072;
    double alpha = 1.0;         // noise spectrum ~ 1/f^alpha
    std::size_t count = 5;      // bursts
    double snr = 5.0;           // burst peak in units of the background MAD
    double burst_width = 40.0;  // Gaussian envelope standard deviation, samples
    double spike_width = 1.5;   // standard deviation of each biphasic spike, samples
    double f_low = 0.09;        // spike repetition rate range, cycles/sample
    double f_high = 0.11;       // (chirp: start and end frequency)
    std::size_t switch_at = 0;  // regime: first bursty sample; 0 means 2/3 of length
    double burst_rate = 0.002;  // regime: bursts per sample after the switch
    std::uint64_t seed = 0;
};

struct SynthEvent {
    std::size_t start = 0;  // inclusive
    std::size_t end = 0;    // inclusive
    std::size_t peak = 0;
    double amplitude = 0.0;
};

struct SynthSignal {
    std::vector<double> samples;
    std::vector<SynthEvent> events;
    double background_mad = 0.0;
    double threshold = 0.0;  // events above this count as present
};

/// Unit-variance noise with power spectrum ~ 1/|f|^alpha and zero mean.
std::vector<double> colored_noise(std::size_t n, double alpha, std::mt19937_64& rng);

/// Median absolute deviation about the median.
double median_abs_deviation(const std::vector<double>& x);

/// Deterministic for a given parameter set.
SynthSignal synthesize(const SynthParams& params);

/// Ground-truth sidecar: events, background MAD, threshold.
std::string synth_truth_json(const SynthParams& params, const SynthSignal& signal);

}  // namespace scatter
