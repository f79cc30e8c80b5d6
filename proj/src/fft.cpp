#include "scatter/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace scatter {

namespace {

constexpr std::size_t kMaxDirectRadix = 31;

std::vector<std::size_t> factorize(std::size_t n)
{
    // Radix-4 first, then 2, then odd primes; emitted as (p, n / p) pairs so
    // the recursion can read both the radix and the remaining length.
    std::vector<std::size_t> factors;
    std::size_t p = 4;
    const auto floor_sqrt = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    do {
        while (n % p != 0) {
            switch (p) {
            case 4: p = 2; break;
            case 2: p = 3; break;
            default: p += 2; break;
            }
            if (p > floor_sqrt) p = n;
        }
        n /= p;
        factors.push_back(p);
        factors.push_back(n);
    } while (n > 1);
    return factors;
}

std::size_t largest_prime_factor(std::size_t n)
{
    std::size_t largest = 1;
    for (std::size_t p = 2; p * p <= n; ++p) {
        while (n % p == 0) {
            largest = p;
            n /= p;
        }
    }
    return std::max(largest, n);
}

Complex unit_root(std::size_t k, std::size_t n)
{
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

std::size_t next_fast_size(std::size_t n)
{
    if (n <= 1) return 1;
    std::size_t best = next_pow2(n);
    for (std::size_t p5 = 1; p5 < best; p5 *= 5) {
        for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
            std::size_t candidate = p35;
            while (candidate < n) candidate *= 2;
            best = std::min(best, candidate);
        }
    }
    return best;
}

FftPlan::FftPlan(std::size_t n) : n_(n)
{
    if (n == 0) throw std::invalid_argument("empty signal");
    if (n == 1) return;

    if (largest_prime_factor(n) > kMaxDirectRadix) {
        const std::size_t m = next_pow2(2 * n - 1);
        inner_ = std::make_shared<const FftPlan>(m);
        chirp_.resize(n);
        const std::size_t two_n = 2 * n;
        for (std::size_t k = 0; k < n; ++k) {
            // k^2 mod 2n keeps the chirp angle small and accurate.
            const std::size_t k2 = static_cast<std::size_t>((static_cast<unsigned __int128>(k) * k) % two_n);
            const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
            chirp_[k] = {std::cos(angle), std::sin(angle)};
        }
        std::vector<Complex> filter(m, Complex{});
        filter[0] = std::conj(chirp_[0]);
        for (std::size_t k = 1; k < n; ++k) {
            filter[k] = std::conj(chirp_[k]);
            filter[m - k] = std::conj(chirp_[k]);
        }
        chirp_filter_hat_.resize(m);
        inner_->forward(filter, chirp_filter_hat_);
        return;
    }

    factors_ = factorize(n);
    twiddles_.resize(n);
    for (std::size_t k = 0; k < n; ++k) twiddles_[k] = unit_root(k, n);
}

void FftPlan::forward(std::span<const Complex> in, std::span<Complex> out) const
{
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("fft: buffer length mismatch");
    transform(in.data(), out.data());
}

void FftPlan::inverse(std::span<const Complex> in, std::span<Complex> out) const
{
    if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("fft: buffer length mismatch");
    // IDFT(X)[t] = DFT(X)[-t mod n] / n
    transform(in.data(), out.data());
    std::reverse(out.begin() + 1, out.end());
    const double scale = 1.0 / static_cast<double>(n_);
    for (auto& v : out) v *= scale;
}

void FftPlan::transform(const Complex* in, Complex* out) const
{
    if (n_ == 1) {
        out[0] = in[0];
        return;
    }
    if (inner_) {
        bluestein(in, out);
        return;
    }
    work(out, in, 1, factors_.data());
}

void FftPlan::work(Complex* out, const Complex* in, std::size_t fstride, const std::size_t* factors) const
{
    const std::size_t p = factors[0];
    const std::size_t m = factors[1];

    if (m == 1) {
        for (std::size_t i = 0; i < p; ++i) out[i] = in[i * fstride];
    } else {
        for (std::size_t i = 0; i < p; ++i) work(out + i * m, in + i * fstride, fstride * p, factors + 2);
    }

    const Complex* tw = twiddles_.data();
    switch (p) {
    case 2:
        for (std::size_t k = 0; k < m; ++k) {
            const Complex t = out[k + m] * tw[k * fstride];
            out[k + m] = out[k] - t;
            out[k] += t;
        }
        break;
    case 3: {
        const double epi3 = tw[fstride * m].imag();
        for (std::size_t k = 0; k < m; ++k) {
            const Complex s1 = out[k + m] * tw[k * fstride];
            const Complex s2 = out[k + 2 * m] * tw[2 * k * fstride];
            const Complex s3 = s1 + s2;
            Complex s0 = s1 - s2;
            Complex mid = out[k] - s3 * 0.5;
            s0 *= epi3;
            out[k] += s3;
            out[k + 2 * m] = {mid.real() + s0.imag(), mid.imag() - s0.real()};
            out[k + m] = {mid.real() - s0.imag(), mid.imag() + s0.real()};
        }
        break;
    }
    case 4:
        for (std::size_t k = 0; k < m; ++k) {
            const Complex s0 = out[k + m] * tw[k * fstride];
            const Complex s1 = out[k + 2 * m] * tw[2 * k * fstride];
            const Complex s2 = out[k + 3 * m] * tw[3 * k * fstride];
            const Complex s5 = out[k] - s1;
            out[k] += s1;
            const Complex s3 = s0 + s2;
            const Complex s4 = s0 - s2;
            out[k + 2 * m] = out[k] - s3;
            out[k] += s3;
            out[k + m] = {s5.real() + s4.imag(), s5.imag() - s4.real()};
            out[k + 3 * m] = {s5.real() - s4.imag(), s5.imag() + s4.real()};
        }
        break;
    default: {
        std::array<Complex, kMaxDirectRadix + 1> scratch{};
        for (std::size_t u = 0; u < m; ++u) {
            for (std::size_t q = 0; q < p; ++q) scratch[q] = out[u + q * m];
            for (std::size_t q1 = 0, k = u; q1 < p; ++q1, k += m) {
                std::size_t twidx = 0;
                Complex acc = scratch[0];
                for (std::size_t q = 1; q < p; ++q) {
                    twidx += fstride * k;
                    if (twidx >= n_) twidx -= n_;
                    acc += scratch[q] * tw[twidx];
                }
                out[k] = acc;
            }
        }
        break;
    }
    }
}

void FftPlan::bluestein(const Complex* in, Complex* out) const
{
    const std::size_t m = inner_->size();
    std::vector<Complex> a(m, Complex{});
    for (std::size_t k = 0; k < n_; ++k) a[k] = in[k] * chirp_[k];
    std::vector<Complex> a_hat(m);
    inner_->forward(a, a_hat);
    for (std::size_t k = 0; k < m; ++k) a_hat[k] *= chirp_filter_hat_[k];
    inner_->inverse(a_hat, a);
    for (std::size_t k = 0; k < n_; ++k) out[k] = a[k] * chirp_[k];
}

ComplexSpectrum fft(std::span<const Complex> x)
{
    if (x.empty()) throw std::invalid_argument("empty signal");
    const FftPlan plan(x.size());
    ComplexSpectrum result{std::vector<Complex>(x.size())};
    plan.forward(x, result.bins);
    return result;
}

ComplexSpectrum fft(std::span<const double> x)
{
    if (x.empty()) throw std::invalid_argument("empty signal");
    const std::vector<Complex> z(x.begin(), x.end());
    return fft(std::span<const Complex>(z));
}

std::vector<Complex> ifft(const ComplexSpectrum& spectrum)
{
    if (spectrum.bins.empty()) throw std::invalid_argument("empty signal");
    const FftPlan plan(spectrum.length());
    std::vector<Complex> out(spectrum.length());
    plan.inverse(spectrum.bins, out);
    return out;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) throw std::invalid_argument("empty signal");
    const std::size_t out_len = a.size() + b.size() - 1;
    const std::size_t n = next_fast_size(out_len);
    const FftPlan plan(n);

    std::vector<Complex> za(n, Complex{}), zb(n, Complex{});
    std::copy(a.begin(), a.end(), za.begin());
    std::copy(b.begin(), b.end(), zb.begin());
    std::vector<Complex> ha(n), hb(n);
    plan.forward(za, ha);
    plan.forward(zb, hb);
    for (std::size_t k = 0; k < n; ++k) ha[k] *= hb[k];
    plan.inverse(ha, za);

    std::vector<double> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out[i] = za[i].real();
    return out;
}

}  // namespace scatter
