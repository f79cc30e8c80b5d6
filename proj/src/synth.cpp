#include "scatter/synth.hpp"

#include "scatter/filterbank.hpp"
#include "scatter/numerics.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scatter {

SynthKind parse_synth_kind(std::string_view text)
{
    if (text == "noise") return SynthKind::noise;
    if (text == "burst") return SynthKind::burst;
    if (text == "chirp") return SynthKind::chirp;
    if (text == "regime") return SynthKind::regime;
    throw std::invalid_argument("unknown synth kind '" + std::string(text) + "'");
}

std::string_view to_string(SynthKind kind)
{
    switch (kind) {
    case SynthKind::noise: return "noise";
    case SynthKind::burst: return "burst";
    case SynthKind::chirp: return "chirp";
    case SynthKind::regime: return "regime";
    }
    return "?";
}

std::vector<double> colored_noise(std::size_t n, double alpha, std::mt19937_64& rng)
{
    if (n == 0) throw std::invalid_argument("empty signal");
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> white(n);
    for (auto& v : white) v = gauss(rng);
    if (n == 1) return {0.0};

    auto spectrum = fft(std::span<const double>(white));
    spectrum.bins[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double f = std::abs(bin_frequency(k, n)) / (2.0 * std::numbers::pi);
        spectrum.bins[k] *= std::pow(f, -alpha / 2.0);
    }
    const auto shaped = ifft(spectrum);

    std::vector<double> out(n);
    double mean = 0.0;
    for (std::size_t t = 0; t < n; ++t) mean += out[t] = shaped[t].real();
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (auto& v : out) {
        v -= mean;
        var += v * v;
    }
    const double sd = std::sqrt(var / static_cast<double>(n));
    if (sd > 0.0)
        for (auto& v : out) v /= sd;
    return out;
}

double median_abs_deviation(const std::vector<double>& x)
{
    const double med = quickselect_median(x);
    std::vector<double> dev(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) dev[i] = std::abs(x[i] - med);
    return quickselect_median(dev);
}

namespace {

// Train of biphasic spikes (first derivative of a Gaussian) repeated every
// 1/rate samples under a Gaussian envelope, scaled so its peak is `amplitude`.
std::vector<double> polyspike(double envelope_width, double spike_width, double rate, double phase)
{
    const auto reach = static_cast<std::ptrdiff_t>(std::ceil(4.0 * envelope_width));
    std::vector<double> shape(static_cast<std::size_t>(2 * reach + 1), 0.0);
    const double period = 1.0 / rate;
    const double first = std::ceil((-3.0 * envelope_width - phase * period) / period);
    for (double k = first;; k += 1.0) {
        const double c = k * period + phase * period;
        if (c > 3.0 * envelope_width) break;
        const double weight = std::exp(-c * c / (2.0 * envelope_width * envelope_width));
        for (std::ptrdiff_t d = -reach; d <= reach; ++d) {
            const double u = (static_cast<double>(d) - c) / spike_width;
            shape[static_cast<std::size_t>(d + reach)] -= weight * u * std::exp(-0.5 * u * u);
        }
    }
    double peak = 0.0;
    for (double v : shape) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
        for (auto& v : shape) v /= peak;
    return shape;
}

void add_burst(std::vector<double>& x, std::size_t center, double amplitude, const SynthParams& params, double rate,
               double phase)
{
    const auto shape = polyspike(params.burst_width, params.spike_width, rate, phase);
    const auto reach = static_cast<std::ptrdiff_t>(shape.size() / 2);
    for (std::ptrdiff_t d = -reach; d <= reach; ++d) {
        const auto t = static_cast<std::ptrdiff_t>(center) + d;
        if (t >= 0 && t < static_cast<std::ptrdiff_t>(x.size()))
            x[static_cast<std::size_t>(t)] += amplitude * shape[static_cast<std::size_t>(d + reach)];
    }
}

SynthEvent event_at(std::size_t center, double amplitude, double width, std::size_t n)
{
    const auto half = static_cast<std::size_t>(std::ceil(3.0 * width));
    return {center >= half ? center - half : 0, std::min(n - 1, center + half), center, amplitude};
}

}  // namespace

SynthSignal synthesize(const SynthParams& params)
{
    if (params.length < 2) throw std::invalid_argument("synthetic length must be at least 2");
    if (!(params.f_low > 0.0 && params.f_low <= params.f_high && params.f_high < 0.5))
        throw std::invalid_argument("frequencies must satisfy 0 < f_low <= f_high < 0.5");
    if (!(params.burst_width > 0.0) || !(params.spike_width > 0.0))
        throw std::invalid_argument("burst and spike widths must be positive");

    std::mt19937_64 rng(params.seed);
    SynthSignal out;
    const std::size_t n = params.length;
    out.samples = colored_noise(n, params.alpha, rng);
    out.background_mad = median_abs_deviation(out.samples);
    out.threshold = 3.0 * out.background_mad;
    const double amplitude = params.snr * out.background_mad;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto frequency = [&] { return params.f_low + (params.f_high - params.f_low) * unit(rng); };

    switch (params.kind) {
    case SynthKind::noise:
        break;
    case SynthKind::burst: {
        if (params.count == 0) break;
        // One burst per equal slot, centred in the middle half of its slot.
        const double slot = static_cast<double>(n) / static_cast<double>(params.count);
        if (slot < 8.0 * params.burst_width) throw std::invalid_argument("too many bursts for the signal length");
        for (std::size_t i = 0; i < params.count; ++i) {
            const double pos = (static_cast<double>(i) + 0.25 + 0.5 * unit(rng)) * slot;
            const auto center = static_cast<std::size_t>(pos);
            const double rate = frequency();
            add_burst(out.samples, center, amplitude, params, rate, unit(rng));
            out.events.push_back(event_at(center, amplitude, params.burst_width, n));
        }
        break;
    }
    case SynthKind::chirp: {
        const double span = static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double u = static_cast<double>(t);
            const double cycles = params.f_low * u + 0.5 * (params.f_high - params.f_low) * u * u / span;
            out.samples[t] += amplitude * std::cos(2.0 * std::numbers::pi * cycles);
        }
        break;
    }
    case SynthKind::regime: {
        const std::size_t switch_at = params.switch_at ? params.switch_at : 2 * n / 3;
        if (switch_at >= n) throw std::invalid_argument("switch_at beyond the signal");
        if (!(params.burst_rate > 0.0)) throw std::invalid_argument("burst_rate must be positive");
        std::exponential_distribution<double> gap(params.burst_rate);
        double pos = static_cast<double>(switch_at) + gap(rng);
        while (pos < static_cast<double>(n)) {
            const auto center = static_cast<std::size_t>(pos);
            const double rate = frequency();
            add_burst(out.samples, center, amplitude, params, rate, unit(rng));
            out.events.push_back(event_at(center, amplitude, params.burst_width, n));
            pos += gap(rng);
        }
        break;
    }
    }
    return out;
}

std::string synth_truth_json(const SynthParams& params, const SynthSignal& signal)
{
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (const auto& e : signal.events)
        events.push_back({{"start", e.start}, {"end", e.end}, {"peak", e.peak}, {"amplitude", e.amplitude}});
    const nlohmann::ordered_json j = {
        {"kind", to_string(params.kind)},
        {"length", params.length},
        {"seed", params.seed},
        {"alpha", params.alpha},
        {"snr", params.snr},
        {"background_mad", signal.background_mad},
        {"threshold", signal.threshold},
        {"events", events},
    };
    return j.dump(2) + "\n";
}

}  // namespace scatter
