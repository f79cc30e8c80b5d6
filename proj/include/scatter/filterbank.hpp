#pragma once

#include "scatter/numerics.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace scatter {

/// Geometric dilation factors 2^(1 + j/Q), j = 0 .. J*Q - 1.
struct ScaleSet {
    int octaves = 0;     // J
    int per_octave = 0;  // Q
    std::vector<double> scales;

    std::size_t size() const { return scales.size(); }
    double smallest() const { return scales.front(); }
    double largest() const { return scales.back(); }
};

ScaleSet build_scale_set(int octaves, int per_octave);

/// Analytic Morlet-style mother wavelet, parameterized in radians/sample.
struct MotherWavelet {
    double center = 0.0;     // xi_0
    double bandwidth = 0.0;  // sigma_w

    /// Center 3*pi/4; bandwidth center / sqrt(ln 1.05e6), so the peak response
    /// is 1 - 1e-6/1.05. Independent of Q: the bank gets denser, not
    /// narrower, as Q grows.
    static MotherWavelet standard();
};

/// Gaussian bump at the center frequency minus a Gaussian at DC scaled so the
/// response is exactly zero at omega = 0. Zero on the negative axis. Written
/// in factored form so it is non-negative and finite for every omega.
double mother_wavelet_hat(double omega, const MotherWavelet& mother);

/// Frequency of DFT bin k on an n-point grid, mapped to (-pi, pi].
double bin_frequency(std::size_t k, std::size_t n);

/// Fourier-domain filters for one scattering layer, sampled on an n-point
/// grid. psi_hat_lambda(omega) = psi_hat_0(lambda * omega) (L1 dilation); the
/// low-pass is a Gaussian whose width matches the coarsest wavelet center.
class FilterBank {
public:
    FilterBank(std::size_t n, ScaleSet scales, MotherWavelet mother);

    std::size_t length() const { return n_; }
    std::size_t band_count() const { return scales_.size(); }
    const ScaleSet& scale_set() const { return scales_; }
    const MotherWavelet& mother() const { return mother_; }
    double lowpass_width() const { return lowpass_width_; }

    std::span<const double> psi_hat(std::size_t band) const { return psi_hat_[band]; }
    std::span<const double> phi_hat() const { return phi_hat_; }

    /// Continuous responses, for checks off the sampling grid.
    double psi_hat_at(std::size_t band, double omega) const;
    double phi_hat_at(double omega) const;

    /// Sup-norm of the band-pass responses over the grid.
    double max_psi_gain() const;

    /// Half-width (samples) beyond which every filter envelope in the bank is
    /// below 1e-6 of its peak.
    double wavelet_half_support() const;
    double lowpass_half_support() const;

    const FftPlan& plan() const { return *plan_; }

private:
    std::size_t n_;
    ScaleSet scales_;
    MotherWavelet mother_;
    double lowpass_width_;
    std::vector<std::vector<double>> psi_hat_;
    std::vector<double> phi_hat_;
    std::shared_ptr<const FftPlan> plan_;
};

FilterBank build_filterbank(std::size_t n, const ScaleSet& scales, const MotherWavelet& mother);
FilterBank build_filterbank(std::size_t n, const ScaleSet& scales);

}  // namespace scatter
