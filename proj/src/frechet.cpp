#include "genmetrics/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "genmetrics/error.hpp"
#include "genmetrics/linalg.hpp"

namespace genmetrics {

FrechetResult frechet_distance_detailed(const GaussianSummary& a, const GaussianSummary& b) {
    if (a.dim != b.dim || a.mean.size() != b.mean.size())
        throw Error(ErrorCode::DimensionMismatch,
                    "summary dims differ: " + std::to_string(a.dim) + " vs " + std::to_string(b.dim));

    FrechetResult r;
    r.mean_term = (a.mean - b.mean).squaredNorm();

    // S_a = V diag(l) V^T, so S_a^{1/2} S_b S_a^{1/2} is similar to
    // diag(sqrt l) (V^T S_b V) diag(sqrt l).
    const SymmetricEigen ea = symmetric_eigen(a.cov, true);
    const double la_max = std::max(ea.values.maxCoeff(), 0.0);
    const double la_min = ea.values.minCoeff();
    const Eigen::VectorXd sqrt_la = ea.values.cwiseMax(0.0).cwiseSqrt();

    Eigen::MatrixXd inner = ea.vectors.transpose() * (b.cov * ea.vectors);
    inner = sqrt_la.asDiagonal() * inner * sqrt_la.asDiagonal();
    inner = 0.5 * (inner + inner.transpose()).eval();

    const SymmetricEigen ep = symmetric_eigen(inner, false);
    const double lp_max = std::max(ep.values.maxCoeff(), 0.0);
    const double lp_min = ep.values.minCoeff();
    r.trace_sqrt = ep.values.cwiseMax(0.0).cwiseSqrt().sum();

    r.most_negative_eigenvalue = std::min({la_min, lp_min, 0.0});
    r.negative_eigenvalue_warning = la_min < -kNegativeEigenvalueTolerance * la_max ||
                                    lp_min < -kNegativeEigenvalueTolerance * lp_max;

    r.raw_value = r.mean_term + a.cov.trace() + b.cov.trace() - 2.0 * r.trace_sqrt;
    r.value = std::max(r.raw_value, 0.0);
    return r;
}

double frechet_distance(const GaussianSummary& a, const GaussianSummary& b) {
    return frechet_distance_detailed(a, b).value;
}

namespace {

std::map<ClassId, std::size_t> class_histogram(const FeatureSet& fs) {
    std::map<ClassId, std::size_t> counts;
    for (ClassId c : fs.labels()) ++counts[c];
    return counts;
}

}  // namespace

double intra_class_fd(const FeatureSet& src, const FeatureSet& tgt) {
    if (!src.has_labels() || !tgt.has_labels())
        throw Error(ErrorCode::LabelMismatch, "intra-class FD needs labels on both sets");
    if (src.dim() != tgt.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "feature dims differ: " + std::to_string(src.dim()) + " vs " + std::to_string(tgt.dim()));

    const auto src_counts = class_histogram(src);
    const auto tgt_counts = class_histogram(tgt);
    std::set<ClassId> src_classes, tgt_classes;
    for (const auto& [c, n] : src_counts) src_classes.insert(c);
    for (const auto& [c, n] : tgt_counts) tgt_classes.insert(c);
    if (src_classes != tgt_classes) throw Error(ErrorCode::LabelMismatch, "source and target class sets differ");

    for (const auto& [c, n] : src_counts)
        if (n < 2 || tgt_counts.at(c) < 2)
            throw Error(ErrorCode::ClassTooSmall, "class " + std::to_string(c) + " has fewer than 2 samples");

    double total = 0.0;
    for (const auto& [c, n] : src_counts)
        total += frechet_distance(summarize(src.rows_with_label(c)), summarize(tgt.rows_with_label(c)));
    return total / static_cast<double>(src_counts.size());
}

}  // namespace genmetrics
