#include "genmetrics/gaussian.hpp"

#include <string>

#include "genmetrics/error.hpp"

namespace genmetrics {

Eigen::MatrixXd to_matrix(const FeatureSet& features) {
    using RowMajorF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const Eigen::Map<const RowMajorF> view(features.values().data(), static_cast<Eigen::Index>(features.count()),
                                           static_cast<Eigen::Index>(features.dim()));
    return view.cast<double>();
}

GaussianSummary summarize(const FeatureSet& features) {
    const std::size_t n = features.count();
    if (n < 2) throw Error(ErrorCode::TooFewSamples, "covariance needs at least 2 samples, got " + std::to_string(n));

    Eigen::MatrixXd x = to_matrix(features);
    GaussianSummary s;
    s.dim = features.dim();
    s.sample_count = n;
    s.mean = x.colwise().mean().transpose();
    x.rowwise() -= s.mean.transpose();

    const auto d = static_cast<Eigen::Index>(s.dim);
    s.cov = Eigen::MatrixXd::Zero(d, d);
    s.cov.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose(), 1.0 / static_cast<double>(n - 1));
    s.cov.triangularView<Eigen::StrictlyUpper>() = s.cov.transpose();
    s.cov = 0.5 * (s.cov + s.cov.transpose()).eval();
    return s;
}

}  // namespace genmetrics
