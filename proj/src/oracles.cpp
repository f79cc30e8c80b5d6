#include "scatter/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace scatter::oracle {

namespace {

// Twiddles from an exact integer phase so long transforms stay accurate.
Complex twiddle(std::size_t k, std::size_t t, std::size_t n, double sign)
{
    const std::size_t phase = (k * t) % n;
    const double angle = sign * 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::vector<Complex> direct_dft(std::span<const Complex> x)
{
    const std::size_t n = x.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex sum = 0.0;
        for (std::size_t t = 0; t < n; ++t) sum += x[t] * twiddle(k, t, n, -1.0);
        out[k] = sum;
    }
    return out;
}

std::vector<Complex> direct_dft(std::span<const double> x)
{
    std::vector<Complex> c(x.begin(), x.end());
    return direct_dft(c);
}

std::vector<Complex> direct_idft(std::span<const Complex> spectrum)
{
    const std::size_t n = spectrum.size();
    std::vector<Complex> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        Complex sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) sum += spectrum[k] * twiddle(k, t, n, 1.0);
        out[t] = sum / static_cast<double>(n);
    }
    return out;
}

std::vector<double> direct_linear_convolution(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) return {};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<Complex> impulse_response(std::span<const double> frequency_response)
{
    std::vector<Complex> c(frequency_response.begin(), frequency_response.end());
    return direct_idft(c);
}

std::vector<Complex> circular_convolution(std::span<const double> x, std::span<const Complex> h)
{
    const std::size_t n = x.size();
    if (h.size() != n) throw std::invalid_argument("length mismatch");
    std::vector<Complex> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        Complex sum = 0.0;
        for (std::size_t s = 0; s < n; ++s) sum += x[s] * h[(t + n - s) % n];
        out[t] = sum;
    }
    return out;
}

DirectScattering direct_scattering(std::span<const double> x, const FilterBank& bank1, const FilterBank& bank2)
{
    const std::size_t n = x.size();
    const std::size_t b1 = bank1.band_count();
    const std::size_t b2 = bank2.band_count();
    const auto phi = impulse_response(bank1.phi_hat());
    std::vector<std::vector<Complex>> psi2(b2);
    for (std::size_t j = 0; j < b2; ++j) psi2[j] = impulse_response(bank2.psi_hat(j));

    DirectScattering out{BandMatrix(n, b1), BandTensor(n, b1, b2), BandTensor(n, b1, b2)};
    for (std::size_t i = 0; i < b1; ++i) {
        const auto y = circular_convolution(x, impulse_response(bank1.psi_hat(i)));
        auto u1 = out.u1.band(i);
        for (std::size_t t = 0; t < n; ++t) u1[t] = std::abs(y[t]);
        for (std::size_t j = 0; j < b2; ++j) {
            const auto z = circular_convolution(u1, psi2[j]);
            auto u2 = out.u2.band(i, j);
            for (std::size_t t = 0; t < n; ++t) u2[t] = std::abs(z[t]);
            const auto s = circular_convolution(u2, phi);
            auto s2 = out.s2.band(i, j);
            for (std::size_t t = 0; t < n; ++t) s2[t] = s[t].real();
        }
    }
    return out;
}

double sorted_median(std::vector<double> x)
{
    if (x.empty()) throw std::invalid_argument("empty sequence");
    std::sort(x.begin(), x.end());
    return x[(x.size() - 1) / 2];
}

PowerPca power_iteration_pca(const BandTensor& rx, double tolerance)
{
    const std::size_t n = rx.length();
    const std::size_t d = rx.outer();
    PowerPca out{BandMatrix(n, rx.inner()), std::vector<double>(rx.inner(), 0.0)};
    for (std::size_t j = 0; j < rx.inner(); ++j) {
        std::vector<double> mean(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t t = 0; t < n; ++t) mean[i] += rx.at(t, i, j);
            mean[i] /= static_cast<double>(n);
        }
        std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                double s = 0.0;
                for (std::size_t t = 0; t < n; ++t) s += (rx.at(t, a, j) - mean[a]) * (rx.at(t, b, j) - mean[b]);
                cov[a][b] = s / static_cast<double>(n - 1);
            }
        double trace = 0.0;
        for (std::size_t a = 0; a < d; ++a) trace += cov[a][a];
        if (trace == 0.0) continue;

        // Shift by the trace so every eigenvalue of the iterated matrix is
        // non-negative and the top one dominates in magnitude.
        std::vector<double> v(d, 1.0);
        for (std::size_t a = 0; a < d; ++a) v[a] += 0.01 * static_cast<double>(a + 1);
        double lambda = 0.0;
        for (int iter = 0; iter < 1000000; ++iter) {
            std::vector<double> w(d, 0.0);
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) w[a] += (cov[a][b] + (a == b ? trace : 0.0)) * v[b];
            double norm = 0.0;
            for (double c : w) norm += c * c;
            norm = std::sqrt(norm);
            for (auto& c : w) c /= norm;
            double rq = 0.0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) rq += w[a] * cov[a][b] * w[b];
            double change = 0.0;
            for (std::size_t a = 0; a < d; ++a) change = std::max(change, std::abs(w[a] - v[a]));
            v = std::move(w);
            const bool settled = std::abs(rq - lambda) <= tolerance * trace && change <= 1e-13;
            lambda = rq;
            if (settled) break;
        }
        std::size_t big = 0;
        for (std::size_t a = 1; a < d; ++a)
            if (std::abs(v[a]) > std::abs(v[big])) big = a;
        if (v[big] < 0.0)
            for (auto& c : v) c = -c;
        out.theta[j] = std::clamp(lambda / trace, 0.0, 1.0);
        for (std::size_t t = 0; t < n; ++t) {
            double s = 0.0;
            for (std::size_t a = 0; a < d; ++a) s += rx.at(t, a, j) * v[a];
            out.lx.at(t, j) = s;
        }
    }
    return out;
}

BandMatrix naive_maxpool(const BandTensor& rx)
{
    BandMatrix out(rx.length(), rx.inner());
    for (std::size_t t = 0; t < rx.length(); ++t)
        for (std::size_t j = 0; j < rx.inner(); ++j) {
            double m = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < rx.outer(); ++i) m = std::max(m, rx.at(t, i, j));
            out.at(t, j) = m;
        }
    return out;
}

BestPartition best_partition(const Matrix& points, std::size_t k)
{
    const std::size_t n = points.rows();
    auto l1 = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t c = 0; c < points.cols(); ++c) s += std::abs(points(a, c) - points(b, c));
        return s;
    };
    BestPartition best{{}, std::numeric_limits<double>::infinity()};
    std::vector<int> labels(n, 0);
    std::function<void(std::size_t, int)> visit = [&](std::size_t i, int used) {
        if (i == n) {
            if (static_cast<std::size_t>(used) != k) return;
            double cost = 0.0;
            for (int g = 0; g < used; ++g) {
                double group_best = std::numeric_limits<double>::infinity();
                for (std::size_t m = 0; m < n; ++m) {
                    if (labels[m] != g) continue;
                    double s = 0.0;
                    for (std::size_t p = 0; p < n; ++p)
                        if (labels[p] == g) s += l1(m, p);
                    group_best = std::min(group_best, s);
                }
                cost += group_best;
            }
            if (cost < best.cost) best = {labels, cost};
            return;
        }
        // Canonical labelling: a point may open at most one new group.
        for (int g = 0; g <= used && g < static_cast<int>(k); ++g) {
            labels[i] = g;
            visit(i + 1, std::max(used, g + 1));
        }
    };
    visit(0, 0);
    return best;
}

std::size_t counted_feature_dimension(int j1, int q1, int j2, int q2, bool with_theta)
{
    std::size_t first = 0, second = 0;
    for (int j = 0; j < j1; ++j)
        for (int q = 0; q < q1; ++q) ++first;
    for (int j = 0; j < j2; ++j)
        for (int q = 0; q < q2; ++q) ++second;

    std::size_t total = 1;  // S0
    total += first;         // S1
    for (std::size_t a = 0; a < first; ++a)
        for (std::size_t b = 0; b < second; ++b) total += 2;  // S2 and m
    if (with_theta) total += second;
    total += second;  // Lx
    return total;
}

double periodogram_slope(std::span<const double> x, std::size_t segment, double f_low, double f_high)
{
    if (segment < 8 || x.size() < segment) throw std::invalid_argument("segment too long for the signal");
    std::vector<double> window(segment);
    for (std::size_t t = 0; t < segment; ++t)
        window[t] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(segment));

    std::vector<double> power(segment / 2 + 1, 0.0);
    std::size_t blocks = 0;
    for (std::size_t start = 0; start + segment <= x.size(); start += segment / 2, ++blocks) {
        std::vector<double> block(segment);
        for (std::size_t t = 0; t < segment; ++t) block[t] = x[start + t] * window[t];
        const auto spec = direct_dft(block);
        for (std::size_t k = 0; k < power.size(); ++k) power[k] += std::norm(spec[k]);
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t k = 1; k < power.size(); ++k) {
        const double f = static_cast<double>(k) / static_cast<double>(segment);
        if (f < f_low || f > f_high) continue;
        const double lx = std::log(f);
        const double ly = std::log(power[k] / static_cast<double>(blocks));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("frequency range holds fewer than two bins");
    const double md = static_cast<double>(m);
    return (md * sxy - sx * sy) / (md * sxx - sx * sx);
}

}  // namespace scatter::oracle
