#pragma once

#include <cstddef>
#include <span>

#include "genmetrics/feature_set.hpp"

namespace genmetrics {

struct ScoreResult {
    double mean = 0.0;
    double std = 0.0;  // population std over splits; 0 for one split
};

// exp(mean_i KL(p(y|x_i) || p_hat(y))) per contiguous chunk, with p_hat the
// chunk's mean posterior; chunk s covers rows [s*N/splits, (s+1)*N/splits).
// Terms with p(y|x_i) = 0 contribute 0. Throws EmptyChunk when
// splits == 0 or splits > N.
ScoreResult classifier_score(const PosteriorSet& posteriors, std::size_t splits = 1);

// Fraction of rows whose label is among the k largest posteriors; a class
// outranks the label when its posterior is larger, or equal with a smaller
// class index. Throws LabelOutOfRange, PreconditionViolation (length or k).
double top_k_accuracy(const PosteriorSet& posteriors, std::span<const ClassId> labels, std::size_t k);

}  // namespace genmetrics
