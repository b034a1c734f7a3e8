#include "genmetrics/scores.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "genmetrics/error.hpp"

namespace genmetrics {

ScoreResult classifier_score(const PosteriorSet& posteriors, std::size_t splits) {
    const std::size_t n = posteriors.count();
    const std::size_t k = posteriors.classes();
    if (splits == 0 || splits > n)
        throw Error(ErrorCode::EmptyChunk,
                    "cannot split " + std::to_string(n) + " rows into " + std::to_string(splits) + " chunks");

    std::vector<double> scores(splits);
    std::vector<double> marginal(k);
    for (std::size_t s = 0; s < splits; ++s) {
        const std::size_t begin = s * n / splits;
        const std::size_t end = (s + 1) * n / splits;
        if (begin == end) throw Error(ErrorCode::EmptyChunk, "chunk " + std::to_string(s) + " is empty");
        const double rows = static_cast<double>(end - begin);

        std::fill(marginal.begin(), marginal.end(), 0.0);
        for (std::size_t i = begin; i < end; ++i) {
            const auto p = posteriors.row(i);
            for (std::size_t c = 0; c < k; ++c) marginal[c] += p[c];
        }
        for (double& v : marginal) v /= rows;

        double kl_sum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const auto p = posteriors.row(i);
            for (std::size_t c = 0; c < k; ++c) {
                const double pc = p[c];
                if (pc > 0.0) kl_sum += pc * (std::log(pc) - std::log(marginal[c]));
            }
        }
        scores[s] = std::exp(kl_sum / rows);
    }

    ScoreResult r;
    for (double v : scores) r.mean += v;
    r.mean /= static_cast<double>(splits);
    double var = 0.0;
    for (double v : scores) var += (v - r.mean) * (v - r.mean);
    r.std = std::sqrt(var / static_cast<double>(splits));
    return r;
}

double top_k_accuracy(const PosteriorSet& posteriors, std::span<const ClassId> labels, std::size_t k) {
    const std::size_t n = posteriors.count();
    const std::size_t classes = posteriors.classes();
    if (labels.size() != n)
        throw Error(ErrorCode::PreconditionViolation, "label count " + std::to_string(labels.size()) +
                                                          " differs from posterior count " + std::to_string(n));
    if (k < 1 || k > classes)
        throw Error(ErrorCode::PreconditionViolation, "k=" + std::to_string(k) + " must be in [1, " +
                                                          std::to_string(classes) + "]");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const ClassId label = labels[i];
        if (label >= classes)
            throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(label) + " in row " + std::to_string(i) +
                                                        " exceeds class count " + std::to_string(classes));
        const auto p = posteriors.row(i);
        const float target = p[label];
        std::size_t better = 0;
        for (std::size_t c = 0; c < classes; ++c)
            if (p[c] > target || (p[c] == target && c < label)) ++better;
        if (better < k) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace genmetrics
