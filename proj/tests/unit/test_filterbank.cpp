#include "scatter/filterbank.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace scatter;

TEST(ScaleSet, DirectEvaluation)
{
    EXPECT_EQ(build_scale_set(3, 1).scales, (std::vector<double>{2, 4, 8}));
    const auto half = build_scale_set(1, 2);
    ASSERT_EQ(half.size(), 2u);
    EXPECT_EQ(half.scales[0], 2.0);
    EXPECT_DOUBLE_EQ(half.scales[1], std::pow(2.0, 1.5));

    const auto base = build_scale_set(2, 10);
    ASSERT_EQ(base.size(), 20u);
    EXPECT_EQ(base.smallest(), 2.0);
    EXPECT_DOUBLE_EQ(base.largest(), std::pow(2.0, 2.9));
    for (std::size_t i = 1; i < base.size(); ++i) EXPECT_GT(base.scales[i], base.scales[i - 1]);
}

TEST(ScaleSet, RejectsEmptyGeometry)
{
    EXPECT_THROW(build_scale_set(0, 4), std::invalid_argument);
    EXPECT_THROW(build_scale_set(2, 0), std::invalid_argument);
}

TEST(MotherWavelet, PeakZeroAndNegativeAxis)
{
    const auto mother = MotherWavelet::standard();
    EXPECT_DOUBLE_EQ(mother.center, 0.75 * std::numbers::pi);
    EXPECT_NEAR(mother_wavelet_hat(mother.center, mother), 1.0, 1e-6);
    EXPECT_EQ(mother_wavelet_hat(0.0, mother), 0.0);
    EXPECT_EQ(mother_wavelet_hat(-mother.center, mother), 0.0);
}

TEST(MotherWavelet, NonNegativeAndBounded)
{
    const auto mother = MotherWavelet::standard();
    for (int i = -1000; i <= 4000; ++i) {
        const double v = mother_wavelet_hat(i * 1e-3, mother);
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
    // Tiny positive frequencies stay finite and non-negative (no cancellation).
    EXPECT_GE(mother_wavelet_hat(1e-300, mother), 0.0);
}

TEST(FilterBank, AdmissibilityAndLowpassNormalization)
{
    const FilterBank bank(256, build_scale_set(2, 10), MotherWavelet::standard());
    EXPECT_EQ(bank.band_count(), 20u);
    for (std::size_t b = 0; b < bank.band_count(); ++b) {
        EXPECT_EQ(bank.psi_hat(b)[0], 0.0);
        // Analytic: nothing on the negative half of the grid.
        for (std::size_t k = 129; k < 256; ++k) EXPECT_EQ(bank.psi_hat(b)[k], 0.0);
    }
    EXPECT_EQ(bank.phi_hat()[0], 1.0);
    EXPECT_DOUBLE_EQ(bank.lowpass_width(), bank.mother().center / bank.scale_set().largest());
}

TEST(FilterBank, BinFrequencyGrid)
{
    EXPECT_EQ(bin_frequency(0, 8), 0.0);
    EXPECT_DOUBLE_EQ(bin_frequency(1, 8), std::numbers::pi / 4.0);
    EXPECT_DOUBLE_EQ(bin_frequency(4, 8), std::numbers::pi);
    EXPECT_DOUBLE_EQ(bin_frequency(7, 8), -std::numbers::pi / 4.0);
    EXPECT_DOUBLE_EQ(bin_frequency(2, 5), 4.0 * std::numbers::pi / 5.0);
    EXPECT_DOUBLE_EQ(bin_frequency(3, 5), -4.0 * std::numbers::pi / 5.0);
}

TEST(FilterBank, CoverageOverBand)
{
    const FilterBank bank(4096, build_scale_set(2, 10), MotherWavelet::standard());
    const double lo = bank.mother().center / bank.scale_set().largest();
    const double hi = bank.mother().center / bank.scale_set().smallest();
    double sup = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double omega = lo + (hi - lo) * i / 2000.0;
        double sum = bank.phi_hat_at(omega) * bank.phi_hat_at(omega);
        for (std::size_t b = 0; b < bank.band_count(); ++b) sum += std::pow(bank.psi_hat_at(b, omega), 2);
        EXPECT_GE(sum, 0.1) << omega;
        sup = std::max(sup, sum);
    }
    EXPECT_TRUE(std::isfinite(sup));
}

TEST(FilterBank, DilationConsistency)
{
    // Octave spacing keeps every product of scales exact.
    const FilterBank octave(512, build_scale_set(3, 1), MotherWavelet::standard());
    const FilterBank dense(512, build_scale_set(2, 10), MotherWavelet::standard());
    for (double omega : {0.01, 0.05, 0.1, 0.2, 0.3}) {
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b)
                EXPECT_EQ(octave.psi_hat_at(a, octave.scale_set().scales[b] * omega),
                          octave.psi_hat_at(b, octave.scale_set().scales[a] * omega));
        for (std::size_t a = 0; a < 20; a += 3)
            for (std::size_t b = 0; b < 20; b += 5) {
                const double lhs = dense.psi_hat_at(a, dense.scale_set().scales[b] * omega);
                const double rhs = dense.psi_hat_at(b, dense.scale_set().scales[a] * omega);
                EXPECT_NEAR(lhs, rhs, 1e-13);
            }
    }
}

TEST(FilterBank, ConstantPeakGainAcrossScales)
{
    const FilterBank bank(1 << 14, build_scale_set(2, 10), MotherWavelet::standard());
    for (std::size_t b = 0; b < bank.band_count(); ++b) {
        const double peak = bank.psi_hat_at(b, bank.mother().center / bank.scale_set().scales[b]);
        // The admissibility correction at the peak is exactly 1e-6/1.05.
        EXPECT_NEAR(peak, 1.0 - 1e-6 / 1.05, 1e-12);
    }
    EXPECT_LE(bank.max_psi_gain(), 1.0);
    EXPECT_GT(bank.max_psi_gain(), 0.99);
}

TEST(FilterBank, DeterministicConstruction)
{
    const FilterBank a(1000, build_scale_set(2, 10), MotherWavelet::standard());
    const FilterBank b(1000, build_scale_set(2, 10), MotherWavelet::standard());
    for (std::size_t band = 0; band < a.band_count(); ++band)
        EXPECT_TRUE(std::equal(a.psi_hat(band).begin(), a.psi_hat(band).end(), b.psi_hat(band).begin()));
    EXPECT_TRUE(std::equal(a.phi_hat().begin(), a.phi_hat().end(), b.phi_hat().begin()));
}

TEST(FilterBank, SupportEstimatesCoverEnvelope)
{
    const FilterBank bank(256, build_scale_set(2, 10), MotherWavelet::standard());
    const double lambda = bank.scale_set().largest();
    const double sigma_t = lambda / bank.mother().bandwidth;
    EXPECT_LE(std::exp(-0.5 * std::pow(bank.wavelet_half_support() / sigma_t, 2)), 1.0000001e-6);
    const double phi_t = 1.0 / bank.lowpass_width();
    EXPECT_LE(std::exp(-0.5 * std::pow(bank.lowpass_half_support() / phi_t, 2)), 1.0000001e-6);
}

TEST(FilterBank, RejectsInvalidInputs)
{
    EXPECT_THROW(FilterBank(1, build_scale_set(1, 1), MotherWavelet::standard()), std::invalid_argument);
    EXPECT_THROW(FilterBank(64, build_scale_set(1, 1), MotherWavelet{4.0, 0.5}), std::invalid_argument);
    EXPECT_THROW(FilterBank(64, build_scale_set(1, 1), MotherWavelet{1.0, 0.0}), std::invalid_argument);
}
