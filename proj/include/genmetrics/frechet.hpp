#pragma once

#include "genmetrics/feature_set.hpp"
#include "genmetrics/gaussian.hpp"

namespace genmetrics {

struct FrechetResult {
    double value = 0.0;           // clamped to >= 0
    double raw_value = 0.0;       // before clamping
    double mean_term = 0.0;       // |mu_a - mu_b|^2
    double trace_sqrt = 0.0;      // Tr((S_a S_b)^{1/2})
    double most_negative_eigenvalue = 0.0;
    bool negative_eigenvalue_warning = false;
};

// Relative threshold below which a negative eigenvalue is reported rather
// than treated as rounding noise.
inline constexpr double kNegativeEigenvalueTolerance = 1e-6;

// |mu_a - mu_b|^2 + Tr(S_a + S_b - 2 (S_a S_b)^{1/2}). The trace of the
// square root is the sum of square roots of the eigenvalues of
// S_a^{1/2} S_b S_a^{1/2}; negative eigenvalues are clamped to zero.
// Errors: DimensionMismatch, NonConvergentEigensolve.
FrechetResult frechet_distance_detailed(const GaussianSummary& a, const GaussianSummary& b);
double frechet_distance(const GaussianSummary& a, const GaussianSummary& b);

// Unweighted mean of per-class Frechet distances over the classes present.
// Errors: LabelMismatch (unlabeled input or different class sets),
// ClassTooSmall (a class with < 2 samples on either side), DimensionMismatch.
double intra_class_fd(const FeatureSet& src, const FeatureSet& tgt);

}  // namespace genmetrics
