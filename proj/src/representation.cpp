#include "scatter/representation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace scatter {

std::string_view to_string(Reducer r) { return r == Reducer::pca ? "pca" : "maxpool"; }

Reducer parse_reducer(std::string_view text)
{
    if (text == "pca") return Reducer::pca;
    if (text == "maxpool") return Reducer::maxpool;
    throw std::invalid_argument("unknown reducer '" + std::string(text) + "' (expected pca or maxpool)");
}

std::vector<double> rho(std::span<const double> x, double m, double p)
{
    if (!(p > 0.0)) throw std::invalid_argument("invalid exponent");
    std::vector<double> out(x.size(), 0.0);
    double max_abs = 0.0;
    double max_raw = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        max_abs = std::max(max_abs, std::abs(x[t]));
        if (x[t] > m) {
            out[t] = std::pow(x[t] - m, p);
            max_raw = std::max(max_raw, out[t]);
        }
    }
    if (max_raw == 0.0) return out;

    const double scale = max_abs / max_raw;
    for (auto& v : out) {
        // The peak is pinned so the infinity norm is preserved exactly.
        v = (v == max_raw) ? max_abs : v * scale;
    }
    return out;
}

Matrix compute_thresholds(const BandTensor& s2, Exec exec)
{
    if (s2.length() == 0) throw std::invalid_argument("empty sequence");
    Matrix m(s2.outer(), s2.inner());
    const auto outer = static_cast<long>(s2.outer());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long i = 0; i < outer; ++i)
        for (std::size_t j = 0; j < s2.inner(); ++j) m(i, j) = quickselect_median(s2.band(i, j));
    return m;
}

RxResult compute_rx(const BandTensor& s2, double p, Exec exec)
{
    if (!(p > 0.0)) throw std::invalid_argument("invalid exponent");
    RxResult result{BandTensor(s2.length(), s2.outer(), s2.inner()), compute_thresholds(s2, exec)};
    const auto outer = static_cast<long>(s2.outer());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long i = 0; i < outer; ++i) {
        for (std::size_t j = 0; j < s2.inner(); ++j) {
            const auto band = rho(s2.band(i, j), result.thresholds(i, j), p);
            std::copy(band.begin(), band.end(), result.rx.band(i, j).begin());
        }
    }
    return result;
}

PcaReduction reduce_pca(const BandTensor& rx, Exec exec)
{
    const std::size_t n = rx.length();
    if (n < 2) throw std::invalid_argument("covariance undefined");
    const std::size_t dim = rx.outer();
    PcaReduction out{BandMatrix(n, rx.inner()), std::vector<double>(rx.inner(), 0.0), Matrix(dim, rx.inner())};
    const auto inner = static_cast<long>(rx.inner());

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long l2 = 0; l2 < inner; ++l2) {
        const auto j = static_cast<std::size_t>(l2);
        std::vector<double> mean(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            double sum = 0.0;
            for (double v : rx.band(i, j)) sum += v;
            mean[i] = sum / static_cast<double>(n);
        }
        Matrix cov(dim, dim);
        for (std::size_t a = 0; a < dim; ++a) {
            const auto xa = rx.band(a, j);
            for (std::size_t b = a; b < dim; ++b) {
                const auto xb = rx.band(b, j);
                double sum = 0.0;
                for (std::size_t t = 0; t < n; ++t) sum += (xa[t] - mean[a]) * (xb[t] - mean[b]);
                cov(a, b) = cov(b, a) = sum / static_cast<double>(n - 1);
            }
        }
        double trace = 0.0;
        for (std::size_t a = 0; a < dim; ++a) trace += cov(a, a);

        const auto eig = eigh(cov);
        for (std::size_t a = 0; a < dim; ++a) out.components(a, j) = eig.eigenvectors(a, 0);
        if (trace <= 0.0) continue;  // no variance, no transient evidence

        out.theta[j] = std::clamp(eig.eigenvalues[0] / trace, 0.0, 1.0);
        auto lx = out.lx.band(j);
        for (std::size_t a = 0; a < dim; ++a) {
            const double w = eig.eigenvectors(a, 0);
            const auto xa = rx.band(a, j);
            for (std::size_t t = 0; t < n; ++t) lx[t] += w * xa[t];
        }
    }
    return out;
}

BandMatrix reduce_maxpool(const BandTensor& rx, Exec exec)
{
    BandMatrix lx(rx.length(), rx.inner());
    const auto inner = static_cast<long>(rx.inner());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long l2 = 0; l2 < inner; ++l2) {
        const auto j = static_cast<std::size_t>(l2);
        auto out = lx.band(j);
        for (std::size_t i = 0; i < rx.outer(); ++i) {
            const auto band = rx.band(i, j);
            if (i == 0) {
                std::copy(band.begin(), band.end(), out.begin());
                continue;
            }
            for (std::size_t t = 0; t < out.size(); ++t) out[t] = std::max(out[t], band[t]);
        }
    }
    return lx;
}

BandMatrix weight_by_theta(const BandMatrix& lx, std::span<const double> theta)
{
    if (theta.size() != lx.bands()) throw std::invalid_argument("theta/lx band count mismatch");
    BandMatrix out = lx;
    for (std::size_t b = 0; b < lx.bands(); ++b)
        for (auto& v : out.band(b)) v *= theta[b];
    return out;
}

std::vector<std::size_t> select_representatives(std::span<const double> theta)
{
    std::vector<std::size_t> picks;
    const std::size_t n = theta.size();
    for (std::size_t start = 0; start < n;) {
        std::size_t end = start;
        while (end + 1 < n && theta[end + 1] == theta[start]) ++end;
        const bool left_ok = start == 0 || theta[start - 1] < theta[start];
        const bool right_ok = end + 1 == n || theta[end + 1] < theta[start];
        if (left_ok && right_ok) picks.push_back(start);
        start = end + 1;
    }
    return picks;
}

TransientRep build_transient_rep(const BandTensor& s2, double p, Reducer reducer, Exec exec, bool keep_rx)
{
    auto [rx, thresholds] = compute_rx(s2, p, exec);
    TransientRep rep;
    rep.thresholds = std::move(thresholds);
    rep.reducer = reducer;
    rep.exponent = p;
    if (reducer == Reducer::pca) {
        auto pca = reduce_pca(rx, exec);
        rep.lx = std::move(pca.lx);
        rep.theta = std::move(pca.theta);
    } else {
        rep.lx = reduce_maxpool(rx, exec);
    }
    if (keep_rx) rep.rx = std::move(rx);
    return rep;
}

InvarianceReport check_permutation_invariance(std::span<const double> x, std::span<const std::size_t> permutation,
                                              const ScatteringPlan& plan, Reducer reducer, double p)
{
    const std::size_t bands1 = plan.bank1.band_count();
    if (permutation.size() != bands1) throw std::invalid_argument("permutation is not a bijection");
    std::vector<bool> seen(bands1, false);
    for (auto idx : permutation) {
        if (idx >= bands1 || seen[idx]) throw std::invalid_argument("permutation is not a bijection");
        seen[idx] = true;
    }
    if (x.size() != plan.signal_length) throw std::invalid_argument("signal/bank length mismatch");

    const auto padded = reflect_pad(x, plan.pad, plan.padded_length);
    const auto u1 = wavelet_modulus(padded, plan.bank1);
    BandMatrix u1_permuted(u1.length(), bands1);
    for (std::size_t i = 0; i < bands1; ++i) {
        const auto src = u1.band(permutation[i]);
        std::copy(src.begin(), src.end(), u1_permuted.band(i).begin());
    }

    const ScatteringOptions options{Exec::parallel, false};
    auto representation_of = [&](const BandMatrix& first_layer) {
        const auto second = scatter_second_layer(first_layer, plan.bank1, plan.bank2, options);
        return build_transient_rep(crop(second.s2, plan.pad, x.size()), p, reducer, Exec::parallel, false);
    };
    const auto reference = representation_of(u1);
    const auto permuted = representation_of(u1_permuted);

    InvarianceReport report;
    report.bit_identical = reference.lx == permuted.lx && reference.theta == permuted.theta;
    for (double v : reference.lx.values()) report.lx_scale = std::max(report.lx_scale, std::abs(v));
    for (std::size_t b = 0; b < reference.lx.bands(); ++b) {
        const auto a = reference.lx.band(b);
        const auto c = permuted.lx.band(b);
        double dot = 0.0;
        for (std::size_t t = 0; t < a.size(); ++t) dot += a[t] * c[t];
        const double sign = (reducer == Reducer::pca && dot < 0.0) ? -1.0 : 1.0;
        for (std::size_t t = 0; t < a.size(); ++t)
            report.max_lx_diff = std::max(report.max_lx_diff, std::abs(a[t] - sign * c[t]));
    }
    for (std::size_t b = 0; b < reference.theta.size(); ++b)
        report.max_theta_diff = std::max(report.max_theta_diff, std::abs(reference.theta[b] - permuted.theta[b]));

    if (reducer == Reducer::maxpool) {
        report.passed = report.bit_identical;
    } else {
        report.passed = report.max_lx_diff <= 1e-8 * std::max(report.lx_scale, 1e-300) &&
                        report.max_theta_diff <= 1e-10;
    }
    return report;
}

}  // namespace scatter
