#pragma once

#include <cstddef>
#include <vector>

#include "genmetrics/feature_set.hpp"

namespace genmetrics {

struct ManifoldParams {
    std::size_t k_pr = 3;  // neighbors for Precision/Recall
    std::size_t k_dc = 5;  // neighbors for Density/Coverage
};

struct PrdcResult {
    double precision = 0.0;
    double recall = 0.0;
    double density = 0.0;
    double coverage = 0.0;
};

// Squared Euclidean distance accumulated in f64, in dimension order.
double squared_distance(std::span<const float> a, std::span<const float> b) noexcept;

// Squared distance from each row to its k-th nearest other row (self
// excluded). Throws KTooLarge unless 1 <= k < N.
std::vector<double> knn_radii_squared(const FeatureSet& fs, std::size_t k);

// Euclidean k-NN radii: sqrt of knn_radii_squared.
std::vector<double> knn_radii(const FeatureSet& fs, std::size_t k);

// Precision/Recall on k_pr-NN balls, Density/Coverage on k_dc-NN balls around
// source (real) rows. Balls are closed: membership is |t - s|^2 <= r^2.
// Errors: DimensionMismatch, KTooLarge.
PrdcResult prdc(const FeatureSet& src, const FeatureSet& tgt, const ManifoldParams& params);

}  // namespace genmetrics
