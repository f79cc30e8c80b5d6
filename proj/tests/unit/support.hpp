#pragma once

#include "scatter/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <span>
#include <vector>

namespace testing_support {

inline std::vector<double> gaussian(std::size_t n, std::mt19937_64& rng, double scale = 1.0)
{
    std::normal_distribution<double> g(0.0, scale);
    std::vector<double> x(n);
    for (auto& v : x) v = g(rng);
    return x;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline double max_abs(std::span<const double> a)
{
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

// Compactly supported test transient: a Gaussian-windowed oscillation.
inline std::vector<double> burst(std::size_t n, std::size_t center, double width, double omega)
{
    std::vector<double> x(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const double d = static_cast<double>(t) - static_cast<double>(center);
        if (std::abs(d) <= 4.0 * width) x[t] = std::exp(-d * d / (2.0 * width * width)) * std::cos(omega * d);
    }
    return x;
}

}  // namespace testing_support
