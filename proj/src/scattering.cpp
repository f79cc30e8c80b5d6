#include "scatter/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scatter {

namespace {

struct Workspace {
    explicit Workspace(std::size_t n) : a(n), b(n) {}
    std::vector<Complex> a;
    std::vector<Complex> b;
};

void check_length(std::size_t got, const FilterBank& bank)
{
    if (got != bank.length()) throw std::invalid_argument("signal/bank length mismatch");
}

/// |IFFT(spectrum * filter)| into out.
void modulus_band(std::span<const Complex> spectrum, std::span<const double> filter, const FftPlan& plan,
                  std::span<double> out, Workspace& ws)
{
    const std::size_t n = spectrum.size();
    for (std::size_t k = 0; k < n; ++k) ws.a[k] = spectrum[k] * filter[k];
    plan.inverse(ws.a, ws.b);
    for (std::size_t t = 0; t < n; ++t) out[t] = std::abs(ws.b[t]);
}

/// Low-passes two real series at once. phi_hat is real and even, so the
/// filter maps real input to real output and the real and imaginary parts
/// of a + ib stay separate. `b` may be empty.
void smooth_pair(std::span<const double> a, std::span<const double> b, const FilterBank& bank,
                 std::span<double> out_a, std::span<double> out_b, Workspace& ws)
{
    const std::size_t n = a.size();
    const auto phi = bank.phi_hat();
    if (b.empty()) {
        for (std::size_t t = 0; t < n; ++t) ws.a[t] = {a[t], 0.0};
    } else {
        for (std::size_t t = 0; t < n; ++t) ws.a[t] = {a[t], b[t]};
    }
    bank.plan().forward(ws.a, ws.b);
    for (std::size_t k = 0; k < n; ++k) ws.b[k] *= phi[k];
    bank.plan().inverse(ws.b, ws.a);
    for (std::size_t t = 0; t < n; ++t) out_a[t] = ws.a[t].real();
    if (!b.empty())
        for (std::size_t t = 0; t < n; ++t) out_b[t] = ws.a[t].imag();
}

std::vector<Complex> spectrum_of(std::span<const double> x, const FftPlan& plan)
{
    std::vector<Complex> z(x.begin(), x.end());
    std::vector<Complex> out(x.size());
    plan.forward(z, out);
    return out;
}

/// Second layer for one first-layer band: u2 and s2 for every second-layer
/// band. u2_out may be null when the caller does not keep U2.
void second_layer_band(std::span<const double> u1_band, const FilterBank& bank1, const FilterBank& bank2,
                       std::size_t l1, BandTensor* u2_out, BandTensor& s2_out, Workspace& ws)
{
    const std::size_t n = u1_band.size();
    const std::size_t bands2 = bank2.band_count();
    const auto u1_hat = spectrum_of(u1_band, bank2.plan());
    std::vector<double> ua(n), ub(n);

    for (std::size_t l2 = 0; l2 < bands2; l2 += 2) {
        const bool has_pair = l2 + 1 < bands2;
        modulus_band(u1_hat, bank2.psi_hat(l2), bank2.plan(), ua, ws);
        if (has_pair) modulus_band(u1_hat, bank2.psi_hat(l2 + 1), bank2.plan(), ub, ws);
        if (u2_out) {
            std::copy(ua.begin(), ua.end(), u2_out->band(l1, l2).begin());
            if (has_pair) std::copy(ub.begin(), ub.end(), u2_out->band(l1, l2 + 1).begin());
        }
        smooth_pair(ua, has_pair ? std::span<const double>(ub) : std::span<const double>{}, bank1,
                    s2_out.band(l1, l2), has_pair ? s2_out.band(l1, l2 + 1) : std::span<double>{}, ws);
    }
}

}  // namespace

BandMatrix wavelet_modulus(std::span<const double> x, const FilterBank& bank, Exec exec)
{
    check_length(x.size(), bank);
    const std::size_t n = x.size();
    const auto x_hat = spectrum_of(x, bank.plan());
    const auto bands = static_cast<long>(bank.band_count());
    BandMatrix out(n, bank.band_count());

#pragma omp parallel if (exec == Exec::parallel)
    {
        Workspace ws(n);
#pragma omp for schedule(dynamic)
        for (long b = 0; b < bands; ++b) modulus_band(x_hat, bank.psi_hat(b), bank.plan(), out.band(b), ws);
    }
    return out;
}

std::vector<double> smooth(std::span<const double> x, const FilterBank& bank)
{
    check_length(x.size(), bank);
    std::vector<double> out(x.size());
    Workspace ws(x.size());
    smooth_pair(x, {}, bank, out, {}, ws);
    return out;
}

BandMatrix smooth(const BandMatrix& u, const FilterBank& bank, Exec exec)
{
    check_length(u.length(), bank);
    const std::size_t n = u.length();
    BandMatrix out(n, u.bands());
    const auto pairs = static_cast<long>((u.bands() + 1) / 2);

#pragma omp parallel if (exec == Exec::parallel)
    {
        Workspace ws(n);
#pragma omp for schedule(dynamic)
        for (long p = 0; p < pairs; ++p) {
            const auto b = static_cast<std::size_t>(2 * p);
            const bool has_pair = b + 1 < u.bands();
            smooth_pair(u.band(b), has_pair ? u.band(b + 1) : std::span<const double>{}, bank, out.band(b),
                        has_pair ? out.band(b + 1) : std::span<double>{}, ws);
        }
    }
    return out;
}

BandTensor smooth(const BandTensor& u, const FilterBank& bank, Exec exec)
{
    check_length(u.length(), bank);
    const std::size_t n = u.length();
    BandTensor out(n, u.outer(), u.inner());
    const auto outer = static_cast<long>(u.outer());

#pragma omp parallel if (exec == Exec::parallel)
    {
        Workspace ws(n);
#pragma omp for schedule(dynamic)
        for (long i = 0; i < outer; ++i) {
            for (std::size_t j = 0; j < u.inner(); j += 2) {
                const bool has_pair = j + 1 < u.inner();
                smooth_pair(u.band(i, j), has_pair ? u.band(i, j + 1) : std::span<const double>{}, bank,
                            out.band(i, j), has_pair ? out.band(i, j + 1) : std::span<double>{}, ws);
            }
        }
    }
    return out;
}

SecondLayer scatter_second_layer(const BandMatrix& u1, const FilterBank& bank1, const FilterBank& bank2,
                                 ScatteringOptions options)
{
    check_length(u1.length(), bank1);
    check_length(u1.length(), bank2);
    if (u1.bands() != bank1.band_count()) throw std::invalid_argument("first-layer band count mismatch");

    const std::size_t n = u1.length();
    SecondLayer out{smooth(u1, bank1, options.exec), BandTensor(),
                    BandTensor(n, u1.bands(), bank2.band_count())};
    if (options.keep_u2) out.u2 = BandTensor(n, u1.bands(), bank2.band_count());
    BandTensor* u2_out = options.keep_u2 ? &out.u2 : nullptr;
    const auto bands1 = static_cast<long>(u1.bands());

#pragma omp parallel if (options.exec == Exec::parallel)
    {
        Workspace ws(n);
#pragma omp for schedule(dynamic)
        for (long l1 = 0; l1 < bands1; ++l1)
            second_layer_band(u1.band(l1), bank1, bank2, static_cast<std::size_t>(l1), u2_out, out.s2, ws);
    }
    return out;
}

ScatteringCoeffs scattering_transform(std::span<const double> x, const FilterBank& bank1, const FilterBank& bank2,
                                      ScatteringOptions options)
{
    check_length(x.size(), bank1);
    check_length(x.size(), bank2);
    ScatteringCoeffs c;
    c.s0 = smooth(x, bank1);
    c.u1 = wavelet_modulus(x, bank1, options.exec);
    auto second = scatter_second_layer(c.u1, bank1, bank2, options);
    c.s1 = std::move(second.s1);
    c.u2 = std::move(second.u2);
    c.s2 = std::move(second.s2);
    c.scales1 = bank1.scale_set();
    c.scales2 = bank2.scale_set();
    return c;
}

ScatteringPlan plan_scattering(std::size_t signal_length, const ScatteringGeometry& geometry)
{
    if (signal_length < 2) throw std::invalid_argument("signal must have at least 2 samples");
    const auto scales1 = build_scale_set(geometry.j1, geometry.q1);
    const auto scales2 = build_scale_set(geometry.j2, geometry.q2);
    const auto mother = MotherWavelet::standard();

    // Supports of the chained filters add up (psi1 then psi2 then phi).
    const FilterBank probe1(2, scales1, mother);
    const FilterBank probe2(2, scales2, mother);
    const auto pad = static_cast<std::size_t>(
        std::ceil(probe1.wavelet_half_support() + probe2.wavelet_half_support() + probe1.lowpass_half_support()));
    const std::size_t padded = next_fast_size(signal_length + 2 * pad);

    return ScatteringPlan{signal_length, pad, padded, FilterBank(padded, scales1, mother),
                          FilterBank(padded, scales2, mother)};
}

std::vector<double> reflect_pad(std::span<const double> x, std::size_t pad, std::size_t total_length)
{
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("empty signal");
    if (total_length < n + pad) throw std::invalid_argument("padded length too short");
    std::vector<double> out(total_length);
    if (n == 1) {
        std::fill(out.begin(), out.end(), x[0]);
        return out;
    }
    const auto period = static_cast<long long>(2 * (n - 1));
    for (std::size_t i = 0; i < total_length; ++i) {
        long long j = (static_cast<long long>(i) - static_cast<long long>(pad)) % period;
        if (j < 0) j += period;
        if (j >= static_cast<long long>(n)) j = period - j;
        out[i] = x[static_cast<std::size_t>(j)];
    }
    return out;
}

BandMatrix crop(const BandMatrix& m, std::size_t offset, std::size_t length)
{
    if (offset + length > m.length()) throw std::out_of_range("crop outside series");
    BandMatrix out(length, m.bands());
    for (std::size_t b = 0; b < m.bands(); ++b) {
        const auto src = m.band(b).subspan(offset, length);
        std::copy(src.begin(), src.end(), out.band(b).begin());
    }
    return out;
}

BandTensor crop(const BandTensor& m, std::size_t offset, std::size_t length)
{
    if (m.empty()) return {};
    if (offset + length > m.length()) throw std::out_of_range("crop outside series");
    BandTensor out(length, m.outer(), m.inner());
    for (std::size_t i = 0; i < m.outer(); ++i)
        for (std::size_t j = 0; j < m.inner(); ++j) {
            const auto src = m.band(i, j).subspan(offset, length);
            std::copy(src.begin(), src.end(), out.band(i, j).begin());
        }
    return out;
}

ScatteringCoeffs scattering_transform(std::span<const double> x, const ScatteringPlan& plan,
                                      ScatteringOptions options)
{
    if (x.size() != plan.signal_length) throw std::invalid_argument("signal/bank length mismatch");
    const auto padded = reflect_pad(x, plan.pad, plan.padded_length);
    auto full = scattering_transform(padded, plan.bank1, plan.bank2, options);

    ScatteringCoeffs c;
    c.s0.assign(full.s0.begin() + static_cast<std::ptrdiff_t>(plan.pad),
                full.s0.begin() + static_cast<std::ptrdiff_t>(plan.pad + x.size()));
    c.u1 = crop(full.u1, plan.pad, x.size());
    c.s1 = crop(full.s1, plan.pad, x.size());
    c.u2 = crop(full.u2, plan.pad, x.size());
    full.u2 = BandTensor();
    c.s2 = crop(full.s2, plan.pad, x.size());
    c.scales1 = std::move(full.scales1);
    c.scales2 = std::move(full.scales2);
    return c;
}

}  // namespace scatter
