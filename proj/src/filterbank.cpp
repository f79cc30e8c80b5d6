#include "scatter/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scatter {

namespace {

// sqrt(2 ln 1e6): a unit Gaussian envelope falls below 1e-6 of its peak here.
const double kEnvelopeCutoff = std::sqrt(2.0 * std::log(1e6));

}  // namespace

ScaleSet build_scale_set(int octaves, int per_octave)
{
    if (octaves < 1 || per_octave < 1) throw std::invalid_argument("invalid filterbank geometry");
    ScaleSet set{octaves, per_octave, {}};
    const int count = octaves * per_octave;
    set.scales.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j)
        set.scales.push_back(std::pow(2.0, 1.0 + static_cast<double>(j) / static_cast<double>(per_octave)));
    return set;
}

MotherWavelet MotherWavelet::standard()
{
    const double center = 0.75 * std::numbers::pi;
    // Admissibility correction at the peak is 1e-6/1.05: inside the 1e-6
    // budget with room for rounding, otherwise as broad as allowed. Narrower
    // bands smooth U1 until no second-layer wavelet on the same frequency
    // range sees any envelope structure.
    return {center, center / std::sqrt(std::log(1.05e6))};
}

double mother_wavelet_hat(double omega, const MotherWavelet& mother)
{
    if (omega <= 0.0) return 0.0;
    const double s2 = mother.bandwidth * mother.bandwidth;
    const double d = omega - mother.center;
    // exp(-(w-xi)^2/2s^2) - exp(-xi^2/2s^2) exp(-w^2/2s^2)
    //   = exp(-(w-xi)^2/2s^2) * (1 - exp(-w xi / s^2))
    return std::exp(-d * d / (2.0 * s2)) * -std::expm1(-omega * mother.center / s2);
}

double bin_frequency(std::size_t k, std::size_t n)
{
    const auto signed_k = static_cast<double>(k <= n / 2 ? static_cast<long long>(k)
                                                         : static_cast<long long>(k) - static_cast<long long>(n));
    return 2.0 * std::numbers::pi * signed_k / static_cast<double>(n);
}

FilterBank::FilterBank(std::size_t n, ScaleSet scales, MotherWavelet mother)
    : n_(n), scales_(std::move(scales)), mother_(mother), lowpass_width_(0.0)
{
    if (n < 2) throw std::invalid_argument("filterbank length must be at least 2");
    if (!(mother.center > 0.0 && mother.center < std::numbers::pi) || !(mother.bandwidth > 0.0) ||
        !std::isfinite(mother.bandwidth))
        throw std::invalid_argument("invalid mother wavelet");
    if (scales_.scales.empty()) throw std::invalid_argument("invalid filterbank geometry");

    lowpass_width_ = mother_.center / scales_.largest();

    psi_hat_.assign(scales_.size(), std::vector<double>(n));
    phi_hat_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double omega = bin_frequency(k, n);
        for (std::size_t b = 0; b < scales_.size(); ++b) psi_hat_[b][k] = psi_hat_at(b, omega);
        phi_hat_[k] = phi_hat_at(omega);
    }
    plan_ = std::make_shared<const FftPlan>(n);
}

double FilterBank::psi_hat_at(std::size_t band, double omega) const
{
    return mother_wavelet_hat(scales_.scales[band] * omega, mother_);
}

double FilterBank::phi_hat_at(double omega) const
{
    return std::exp(-omega * omega / (2.0 * lowpass_width_ * lowpass_width_));
}

double FilterBank::max_psi_gain() const
{
    double best = 0.0;
    for (const auto& row : psi_hat_)
        for (double v : row) best = std::max(best, v);
    return best;
}

double FilterBank::wavelet_half_support() const
{
    // The coarsest wavelet has spectral width sigma_w / lambda_max.
    return kEnvelopeCutoff * scales_.largest() / mother_.bandwidth;
}

double FilterBank::lowpass_half_support() const { return kEnvelopeCutoff / lowpass_width_; }

FilterBank build_filterbank(std::size_t n, const ScaleSet& scales, const MotherWavelet& mother)
{
    return FilterBank(n, scales, mother);
}

FilterBank build_filterbank(std::size_t n, const ScaleSet& scales)
{
    return FilterBank(n, scales, MotherWavelet::standard());
}

}  // namespace scatter
