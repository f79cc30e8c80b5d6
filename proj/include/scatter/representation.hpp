#pragma once

#include "scatter/numerics.hpp"
#include "scatter/scattering.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace scatter {

enum class Reducer { pca, maxpool };

std::string_view to_string(Reducer r);
Reducer parse_reducer(std::string_view text);

/// Thresholded power law: 0 where x <= m, (x - m)^p above. A non-zero result
/// is rescaled so its maximum equals max |x|.
std::vector<double> rho(std::span<const double> x, double m, double p);

/// Per-band lower median over time of S2; |L1| x |L2|.
Matrix compute_thresholds(const BandTensor& s2, Exec exec = Exec::parallel);

struct RxResult {
    BandTensor rx;
    Matrix thresholds;
};

RxResult compute_rx(const BandTensor& s2, double p, Exec exec = Exec::parallel);

struct PcaReduction {
    BandMatrix lx;
    std::vector<double> theta;  // top eigenvalue / trace per second-layer band
    Matrix components;          // |L1| x |L2|, column = top eigenvector
};

/// Per second-layer band: covariance over time of the |L1| first-layer
/// series (mean-centred), top eigenvector, and the projection of the
/// uncentred rows onto it.
PcaReduction reduce_pca(const BandTensor& rx, Exec exec = Exec::parallel);

/// lx(t, l2) = max over l1 of rx(t, l1, l2).
BandMatrix reduce_maxpool(const BandTensor& rx, Exec exec = Exec::parallel);

BandMatrix weight_by_theta(const BandMatrix& lx, std::span<const double> theta);

/// Local maxima of theta along the band axis. A plateau reports its leftmost
/// index; an endpoint counts when it strictly exceeds its only neighbour.
std::vector<std::size_t> select_representatives(std::span<const double> theta);

struct TransientRep {
    Matrix thresholds;  // m, |L1| x |L2|
    BandTensor rx;      // empty when not retained
    BandMatrix lx;
    std::vector<double> theta;  // empty for maxpool
    Reducer reducer = Reducer::pca;
    double exponent = 2.0;
};

TransientRep build_transient_rep(const BandTensor& s2, double p, Reducer reducer, Exec exec = Exec::parallel,
                                 bool keep_rx = true);

struct InvarianceReport {
    double max_lx_diff = 0.0;     // after sign alignment for pca
    double lx_scale = 0.0;        // max |lx| of the reference run
    double max_theta_diff = 0.0;
    bool bit_identical = false;
    bool passed = false;
};

/// Recomputes Lx from a scalogram whose first-layer bands are rearranged by
/// `permutation` (band i takes original band permutation[i]) and compares
/// against the unpermuted result.
InvarianceReport check_permutation_invariance(std::span<const double> x, std::span<const std::size_t> permutation,
                                              const ScatteringPlan& plan, Reducer reducer, double p = 2.0);

}  // namespace scatter
