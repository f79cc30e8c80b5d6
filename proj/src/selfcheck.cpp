#include "scatter/selfcheck.hpp"

#include "scatter/clustering.hpp"
#include "scatter/detection.hpp"
#include "scatter/filterbank.hpp"
#include "scatter/io.hpp"
#include "scatter/numerics.hpp"
#include "scatter/oracles.hpp"
#include "scatter/representation.hpp"
#include "scatter/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace scatter {

namespace {

double max_rel_diff(std::span<const double> a, std::span<const double> b)
{
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(b[i]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

}  // namespace

std::vector<CheckOutcome> run_selfcheck(unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CheckOutcome> out;

    {
        std::vector<Complex> x(97);
        for (auto& v : x) v = {gauss(rng), gauss(rng)};
        const auto fast = fft(std::span<const Complex>(x));
        const auto slow = oracle::direct_dft(x);
        double diff = 0.0, scale = 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) {
            diff = std::max(diff, std::abs(fast.bins[k] - slow[k]));
            scale = std::max(scale, std::abs(slow[k]));
        }
        out.push_back({"fft vs direct DFT (n=97)", diff <= 1e-10 * scale, "rel " + sci(diff / scale)});
    }
    {
        bool ok = true;
        for (int trial = 0; trial < 200 && ok; ++trial) {
            std::vector<double> x(1 + rng() % 300);
            for (auto& v : x) v = std::floor(gauss(rng) * 4.0);
            ok = quickselect_median(x) == oracle::sorted_median(x);
        }
        out.push_back({"quickselect median vs sort", ok, "200 arrays"});
    }
    {
        Matrix c(12, 12);
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = i; j < 12; ++j) c(i, j) = c(j, i) = gauss(rng);
        const auto e = eigh(c);
        Matrix lambda(12, 12);
        for (std::size_t i = 0; i < 12; ++i) lambda(i, i) = e.eigenvalues[i];
        const auto recon = multiply(multiply(e.eigenvectors, lambda), e.eigenvectors.transposed());
        double resid = 0.0;
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j) resid = std::max(resid, std::abs(recon(i, j) - c(i, j)));
        out.push_back({"eigh reconstruction (12x12)", resid <= 1e-10 * std::max(1.0, inf_norm(c)), sci(resid)});
    }
    {
        const auto bank = build_filterbank(256, build_scale_set(2, 4));
        bool ok = bank.phi_hat()[0] == 1.0;
        for (std::size_t b = 0; b < bank.band_count(); ++b) ok = ok && bank.psi_hat(b)[0] == 0.0;
        out.push_back({"filter admissibility and low-pass gain", ok, "8 bands"});
    }
    {
        const std::size_t n = 128;
        const auto bank1 = build_filterbank(n, build_scale_set(1, 3));
        const auto bank2 = build_filterbank(n, build_scale_set(1, 2));
        std::vector<double> x(n);
        for (auto& v : x) v = gauss(rng);
        const auto fast = scattering_transform(x, bank1, bank2, {Exec::serial, true});
        const auto slow = oracle::direct_scattering(x, bank1, bank2);
        const double err = std::max({max_rel_diff(fast.u1.values(), slow.u1.values()),
                                     max_rel_diff(fast.u2.values(), slow.u2.values()),
                                     max_rel_diff(fast.s2.values(), slow.s2.values())});
        out.push_back({"scattering vs direct convolution (n=128)", err <= 1e-8, "rel " + sci(err)});
    }

    const std::size_t n = 1024;
    const auto plan = plan_scattering(n, {1, 4, 1, 4});
    std::vector<double> x(n);
    for (auto& v : x) v = gauss(rng);
    x[n / 2] += 20.0;
    const auto coeffs = scattering_transform(x, plan, {Exec::parallel, false});
    {
        const auto [rx, m] = compute_rx(coeffs.s2, 2.0);
        bool ok = true;
        for (std::size_t i = 0; i < rx.outer(); ++i)
            for (std::size_t j = 0; j < rx.inner(); ++j) {
                const auto band = rx.band(i, j);
                ok = ok && static_cast<std::size_t>(std::count(band.begin(), band.end(), 0.0)) >= (n + 1) / 2;
            }
        out.push_back({"Rx sparsity >= half", ok, "16 bands"});
    }
    {
        std::vector<std::size_t> perm(4);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto maxpool = check_permutation_invariance(x, perm, plan, Reducer::maxpool);
        out.push_back({"maxpool permutation invariance", maxpool.passed, maxpool.bit_identical ? "bit-identical" : "differs"});
        const auto pca = check_permutation_invariance(x, perm, plan, Reducer::pca);
        out.push_back({"pca permutation invariance", pca.passed,
                       "lx " + sci(pca.max_lx_diff) + ", theta " + sci(pca.max_theta_diff)});
    }
    {
        BandTensor rx(16, 4, 3);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                for (auto& v : rx.band(i, j)) v = std::abs(gauss(rng));
        const auto fast = reduce_pca(rx);
        const auto slow = oracle::power_iteration_pca(rx);
        double theta = 0.0, lx = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            theta = std::max(theta, std::abs(fast.theta[j] - slow.theta[j]));
            lx = std::max(lx, max_rel_diff(fast.lx.band(j), slow.lx.band(j)));
        }
        out.push_back({"pca vs power iteration", theta <= 1e-9 && lx <= 1e-8, "theta " + sci(theta) + ", lx " + sci(lx)});
    }
    {
        const bool ok = feature_dimension({2, 10, 2, 10}, Reducer::pca) == 861 &&
                        feature_dimension({1, 1, 1, 1}, Reducer::pca) == 6 &&
                        feature_dimension({3, 4, 2, 3}, Reducer::maxpool) ==
                            oracle::counted_feature_dimension(3, 4, 2, 3, false);
        out.push_back({"feature dimension", ok, "861 at (2,10,2,10)"});
    }
    {
        Matrix pts(5, 1);
        const double v[] = {0.0, 0.1, 0.2, 10.0, 10.1};
        for (std::size_t i = 0; i < 5; ++i) pts(i, 0) = v[i];
        const auto c = cluster_frames(pts, 3, seed);
        const bool ok = c.k == 2 && c.labels[0] == c.labels[1] && c.labels[1] == c.labels[2] &&
                        c.labels[3] == c.labels[4] && c.labels[0] != c.labels[3];
        out.push_back({"k-medoids two blobs", ok, "k=" + std::to_string(c.k)});
    }
    return out;
}

}  // namespace scatter
