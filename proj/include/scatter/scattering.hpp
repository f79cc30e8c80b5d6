#pragma once

#include "scatter/filterbank.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace scatter {

/// Selects the threaded kernels or the single-threaded reference loops. Both
/// produce bit-identical output: every output band is computed by the same
/// arithmetic on exactly one thread.
enum class Exec { serial, parallel };

/// n x bands matrix stored band-major, so each band is a contiguous series.
class BandMatrix {
public:
    BandMatrix() = default;
    BandMatrix(std::size_t length, std::size_t bands, double fill = 0.0)
        : length_(length), bands_(bands), data_(length * bands, fill)
    {
    }

    std::size_t length() const { return length_; }
    std::size_t bands() const { return bands_; }

    std::span<double> band(std::size_t b) { return {data_.data() + b * length_, length_}; }
    std::span<const double> band(std::size_t b) const { return {data_.data() + b * length_, length_}; }
    double& at(std::size_t t, std::size_t b) { return data_[b * length_ + t]; }
    double at(std::size_t t, std::size_t b) const { return data_[b * length_ + t]; }
    std::span<const double> values() const { return data_; }

    bool operator==(const BandMatrix&) const = default;

private:
    std::size_t length_ = 0;
    std::size_t bands_ = 0;
    std::vector<double> data_;
};

/// n x outer x inner tensor; the series for each (outer, inner) pair is
/// contiguous.
class BandTensor {
public:
    BandTensor() = default;
    BandTensor(std::size_t length, std::size_t outer, std::size_t inner, double fill = 0.0)
        : length_(length), outer_(outer), inner_(inner), data_(length * outer * inner, fill)
    {
    }

    std::size_t length() const { return length_; }
    std::size_t outer() const { return outer_; }
    std::size_t inner() const { return inner_; }
    bool empty() const { return data_.empty(); }

    std::span<double> band(std::size_t i, std::size_t j) { return {data_.data() + offset(i, j), length_}; }
    std::span<const double> band(std::size_t i, std::size_t j) const { return {data_.data() + offset(i, j), length_}; }
    double& at(std::size_t t, std::size_t i, std::size_t j) { return data_[offset(i, j) + t]; }
    double at(std::size_t t, std::size_t i, std::size_t j) const { return data_[offset(i, j) + t]; }
    std::span<const double> values() const { return data_; }

    bool operator==(const BandTensor&) const = default;

private:
    std::size_t offset(std::size_t i, std::size_t j) const { return (i * inner_ + j) * length_; }

    std::size_t length_ = 0;
    std::size_t outer_ = 0;
    std::size_t inner_ = 0;
    std::vector<double> data_;
};

struct ScatteringCoeffs {
    std::vector<double> s0;  // x * phi
    BandMatrix u1;           // |x * psi_l1|, the scalogram
    BandMatrix s1;           // u1 * phi
    BandTensor u2;           // ||x * psi_l1| * psi_l2|; empty unless requested
    BandTensor s2;           // u2 * phi
    ScaleSet scales1;
    ScaleSet scales2;
};

struct ScatteringOptions {
    Exec exec = Exec::parallel;
    bool keep_u2 = true;
};

/// |x * psi_lambda| for every band, by circular convolution in the Fourier
/// domain. x must have the bank's length.
BandMatrix wavelet_modulus(std::span<const double> x, const FilterBank& bank, Exec exec = Exec::parallel);

/// Circular convolution with the bank's low-pass.
std::vector<double> smooth(std::span<const double> x, const FilterBank& bank);
BandMatrix smooth(const BandMatrix& u, const FilterBank& bank, Exec exec = Exec::parallel);
BandTensor smooth(const BandTensor& u, const FilterBank& bank, Exec exec = Exec::parallel);

/// Two-layer scattering at full time resolution, circular boundary. Every
/// S_i is smoothed with bank1's low-pass.
ScatteringCoeffs scattering_transform(std::span<const double> x, const FilterBank& bank1, const FilterBank& bank2,
                                      ScatteringOptions options = {});

struct SecondLayer {
    BandMatrix s1;
    BandTensor u2;
    BandTensor s2;
};

/// Everything downstream of U1. Lets callers feed a rearranged scalogram.
SecondLayer scatter_second_layer(const BandMatrix& u1, const FilterBank& bank1, const FilterBank& bank2,
                                 ScatteringOptions options = {});

struct ScatteringGeometry {
    int j1 = 2;
    int q1 = 10;
    int j2 = 2;
    int q2 = 10;
};

/// Filter banks sized for a reflect-padded signal. The pad covers the
/// combined envelope of the coarsest first- and second-layer wavelets and the
/// low-pass, so the circular transform never wraps signal content around.
struct ScatteringPlan {
    std::size_t signal_length = 0;
    std::size_t pad = 0;
    std::size_t padded_length = 0;
    FilterBank bank1;
    FilterBank bank2;
};

ScatteringPlan plan_scattering(std::size_t signal_length, const ScatteringGeometry& geometry);

/// Mirror-extends x (edge sample not repeated) with `pad` samples in front
/// and enough behind to reach `total_length`.
std::vector<double> reflect_pad(std::span<const double> x, std::size_t pad, std::size_t total_length);

/// Pads, transforms, and crops back to the original time axis.
ScatteringCoeffs scattering_transform(std::span<const double> x, const ScatteringPlan& plan,
                                      ScatteringOptions options = {});

BandMatrix crop(const BandMatrix& m, std::size_t offset, std::size_t length);
BandTensor crop(const BandTensor& m, std::size_t offset, std::size_t length);

}  // namespace scatter
