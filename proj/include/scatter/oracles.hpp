#pragma once

// Brute-force reference computations used by the tests and `selfcheck`.
// Nothing here calls the FFT, the selection kernel or the eigensolver.

#include "scatter/filterbank.hpp"
#include "scatter/numerics.hpp"
#include "scatter/representation.hpp"
#include "scatter/scattering.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace scatter::oracle {

std::vector<Complex> direct_dft(std::span<const Complex> x);
std::vector<Complex> direct_dft(std::span<const double> x);
std::vector<Complex> direct_idft(std::span<const Complex> spectrum);

std::vector<double> direct_linear_convolution(std::span<const double> a, std::span<const double> b);

/// Time-domain taps of a filter given by its samples on the DFT grid.
std::vector<Complex> impulse_response(std::span<const double> frequency_response);

/// y[t] = sum_s x[s] h[(t - s) mod n].
std::vector<Complex> circular_convolution(std::span<const double> x, std::span<const Complex> h);

struct DirectScattering {
    BandMatrix u1;
    BandTensor u2;
    BandTensor s2;
};

/// Two-layer scattering by explicit time-domain convolution, O(n^2) per band.
DirectScattering direct_scattering(std::span<const double> x, const FilterBank& bank1, const FilterBank& bank2);

/// Lower median by full sort.
double sorted_median(std::vector<double> x);

struct PowerPca {
    BandMatrix lx;
    std::vector<double> theta;
};

/// Explicit covariance per second-layer band, top eigenpair by power
/// iteration until successive Rayleigh quotients agree to `tolerance`.
PowerPca power_iteration_pca(const BandTensor& rx, double tolerance = 1e-12);

BandMatrix naive_maxpool(const BandTensor& rx);

/// Minimum k-medoids cost over every labelling of `points` into k non-empty
/// groups, with the optimal labelling. Exponential; tiny inputs only.
struct BestPartition {
    std::vector<int> labels;
    double cost = 0.0;
};
BestPartition best_partition(const Matrix& points, std::size_t k);

/// Feature length counted block by block.
std::size_t counted_feature_dimension(int j1, int q1, int j2, int q2, bool with_theta);

/// Least-squares slope of log power against log frequency over [f_low, f_high]
/// cycles/sample, from a Welch average of direct DFTs of `segment`-sample
/// Hann-windowed blocks.
double periodogram_slope(std::span<const double> x, std::size_t segment, double f_low, double f_high);

}  // namespace scatter::oracle
