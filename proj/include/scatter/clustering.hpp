#pragma once

#include "scatter/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace scatter {

/// Pairwise L1 (city-block) distances between the rows of `points`.
Matrix cityblock_distances(const Matrix& points);

struct KMedoidsResult {
    std::vector<std::size_t> medoids;  // point indices
    std::vector<int> labels;           // index into medoids
    double cost = 0.0;                 // sum of distances to the nearest medoid
    std::vector<double> cost_history;  // after initialization, then after every swap
    int iterations = 0;
};

/// PAM-style k-medoids on a precomputed distance matrix. Initialization is
/// farthest-point from a seeded first pick; each iteration applies the single
/// medoid/non-medoid swap that lowers the total cost the most, stopping when
/// no swap helps or after max_iter swaps.
KMedoidsResult kmedoids(const Matrix& distances, std::size_t k, std::uint64_t seed, int max_iter = 100);

/// Mean silhouette; singleton clusters contribute 0.
double silhouette_score(const Matrix& distances, std::span<const int> labels, std::size_t k);

struct ClusterResult {
    std::vector<int> labels;
    std::size_t k = 1;
    std::vector<double> silhouettes;  // indexed by k; NaN where k was not tried
};

/// Silhouette score below which a single cluster is preferred.
inline constexpr double kMinSilhouette = 0.2;

/// k-medoids under city-block distance for k = 2 .. k_max, keeping the k with
/// the best mean silhouette. Falls back to one cluster when every point
/// coincides or no k reaches kMinSilhouette. Values of k larger than the
/// number of frames are skipped.
ClusterResult cluster_frames(const Matrix& frames, std::size_t k_max, std::uint64_t seed);

}  // namespace scatter
