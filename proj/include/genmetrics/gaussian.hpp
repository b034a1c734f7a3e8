#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "genmetrics/feature_set.hpp"

namespace genmetrics {

// First and second moments of a feature set.
struct GaussianSummary {
    std::size_t dim = 0;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    std::size_t sample_count = 0;
};

// Two-pass estimate: mean first, then the unbiased (N - 1) covariance of the
// centered rows, symmetrized. Throws TooFewSamples when N < 2.
GaussianSummary summarize(const FeatureSet& features);

// Copies the f32 feature matrix into an N x D double matrix.
Eigen::MatrixXd to_matrix(const FeatureSet& features);

}  // namespace genmetrics
