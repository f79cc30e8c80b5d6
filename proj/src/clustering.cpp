#include "scatter/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace scatter {

Matrix cityblock_distances(const Matrix& points)
{
    const std::size_t n = points.rows();
    Matrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = points.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto b = points.row(j);
            double sum = 0.0;
            for (std::size_t c = 0; c < a.size(); ++c) sum += std::abs(a[c] - b[c]);
            d(i, j) = d(j, i) = sum;
        }
    }
    return d;
}

namespace {

struct Assignment {
    std::vector<int> nearest;
    std::vector<double> nearest_dist;
    std::vector<double> second_dist;
    double cost = 0.0;
};

Assignment assign(const Matrix& d, const std::vector<std::size_t>& medoids)
{
    const std::size_t n = d.rows();
    Assignment a{std::vector<int>(n), std::vector<double>(n), std::vector<double>(n), 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        double second = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            const double v = d(i, medoids[m]);
            if (v < best) {
                second = best;
                best = v;
                arg = static_cast<int>(m);
            } else if (v < second) {
                second = v;
            }
        }
        a.nearest[i] = arg;
        a.nearest_dist[i] = best;
        a.second_dist[i] = second;
        a.cost += best;
    }
    return a;
}

}  // namespace

KMedoidsResult kmedoids(const Matrix& d, std::size_t k, std::uint64_t seed, int max_iter)
{
    const std::size_t n = d.rows();
    if (d.cols() != n) throw std::invalid_argument("matrix not square");
    if (k == 0 || k > n) throw std::invalid_argument("k-medoids: k must be in [1, n]");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> medoids{pick(rng)};
    std::vector<bool> is_medoid(n, false);
    is_medoid[medoids[0]] = true;
    std::vector<double> min_dist(n);
    for (std::size_t i = 0; i < n; ++i) min_dist[i] = d(i, medoids[0]);
    while (medoids.size() < k) {
        std::size_t arg = n;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_medoid[i] && min_dist[i] > best) {
                best = min_dist[i];
                arg = i;
            }
        }
        medoids.push_back(arg);
        is_medoid[arg] = true;
        for (std::size_t i = 0; i < n; ++i) min_dist[i] = std::min(min_dist[i], d(i, arg));
    }

    KMedoidsResult result;
    auto state = assign(d, medoids);
    result.cost_history.push_back(state.cost);

    for (; result.iterations < max_iter; ++result.iterations) {
        double best_delta = 0.0;
        std::size_t best_slot = 0, best_candidate = n;
        for (std::size_t slot = 0; slot < k; ++slot) {
            for (std::size_t o = 0; o < n; ++o) {
                if (is_medoid[o]) continue;
                double delta = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    const double djo = d(j, o);
                    if (state.nearest[j] == static_cast<int>(slot))
                        delta += std::min(djo, state.second_dist[j]) - state.nearest_dist[j];
                    else if (djo < state.nearest_dist[j])
                        delta += djo - state.nearest_dist[j];
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_slot = slot;
                    best_candidate = o;
                }
            }
        }
        if (best_candidate == n || best_delta >= -1e-12 * std::max(1.0, state.cost)) break;

        is_medoid[medoids[best_slot]] = false;
        medoids[best_slot] = best_candidate;
        is_medoid[best_candidate] = true;
        auto next = assign(d, medoids);
        if (next.cost >= state.cost) break;  // rounding guard; keeps the cost strictly decreasing
        state = std::move(next);
        result.cost_history.push_back(state.cost);
    }

    result.medoids = std::move(medoids);
    result.labels = std::move(state.nearest);
    result.cost = state.cost;
    return result;
}

double silhouette_score(const Matrix& d, std::span<const int> labels, std::size_t k)
{
    const std::size_t n = labels.size();
    if (n == 0) return 0.0;
    std::vector<std::size_t> sizes(k, 0);
    for (int l : labels) ++sizes[static_cast<std::size_t>(l)];

    double total = 0.0;
    std::vector<double> sums(k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto own = static_cast<std::size_t>(labels[i]);
        if (sizes[own] <= 1) continue;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t j = 0; j < n; ++j) sums[static_cast<std::size_t>(labels[j])] += d(i, j);
        const double a = sums[own] / static_cast<double>(sizes[own] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c)
            if (c != own && sizes[c] > 0) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
        if (!std::isfinite(b)) continue;
        const double denom = std::max(a, b);
        if (denom > 0.0) total += (b - a) / denom;
    }
    return total / static_cast<double>(n);
}

ClusterResult cluster_frames(const Matrix& frames, std::size_t k_max, std::uint64_t seed)
{
    const std::size_t n = frames.rows();
    if (n < 2) throw std::invalid_argument("clustering needs at least 2 frames");
    if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");

    ClusterResult result;
    result.labels.assign(n, 0);
    result.silhouettes.assign(k_max + 1, std::numeric_limits<double>::quiet_NaN());

    const auto d = cityblock_distances(frames);
    double max_distance = 0.0;
    for (double v : d.values()) max_distance = std::max(max_distance, v);
    if (max_distance < 1e-12) return result;

    double best_score = -std::numeric_limits<double>::infinity();
    std::vector<int> best_labels;
    std::size_t best_k = 1;
    for (std::size_t k = 2; k <= k_max && k <= n; ++k) {
        const auto km = kmedoids(d, k, seed);
        const double score = silhouette_score(d, km.labels, k);
        result.silhouettes[k] = score;
        if (score > best_score) {
            best_score = score;
            best_k = k;
            best_labels = km.labels;
        }
    }
    if (best_k > 1 && best_score >= kMinSilhouette) {
        result.k = best_k;
        result.labels = std::move(best_labels);
    }
    return result;
}

}  // namespace scatter
