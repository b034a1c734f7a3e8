#include "genmetrics/feature_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genmetrics/error.hpp"

namespace genmetrics {

FeatureSet::FeatureSet(std::size_t count, std::size_t dim, std::vector<float> values,
                       std::optional<std::vector<ClassId>> labels, std::optional<std::uint32_t> class_count,
                       std::string source_tag)
    : count_(count), dim_(dim), values_(std::move(values)), labels_(std::move(labels)),
      source_tag_(std::move(source_tag)) {
    if (count_ < 1 || dim_ < 1) throw Error(ErrorCode::PreconditionViolation, "feature set needs N >= 1 and D >= 1");
    if (values_.size() != count_ * dim_)
        throw Error(ErrorCode::PreconditionViolation, "feature values do not match N x D");
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (!std::isfinite(values_[i]))
            throw Error(ErrorCode::NonFiniteValue, "non-finite feature at row " + std::to_string(i / dim_));
    if (labels_) {
        if (labels_->size() != count_) throw Error(ErrorCode::PreconditionViolation, "label count does not match N");
        const ClassId max_label = *std::max_element(labels_->begin(), labels_->end());
        class_count_ = class_count.value_or(max_label + 1);
        if (class_count_ < 1) throw Error(ErrorCode::PreconditionViolation, "class count must be >= 1");
        if (max_label >= class_count_)
            throw Error(ErrorCode::LabelOutOfRange, "label " + std::to_string(max_label) + " >= class count " +
                                                        std::to_string(class_count_));
    } else if (class_count && *class_count != 0) {
        throw Error(ErrorCode::PreconditionViolation, "class count given without labels");
    }
}

FeatureSet FeatureSet::select_rows(std::span<const std::size_t> indices) const {
    std::vector<float> values;
    values.reserve(indices.size() * dim_);
    std::optional<std::vector<ClassId>> labels;
    if (labels_) labels.emplace().reserve(indices.size());
    for (std::size_t idx : indices) {
        if (idx >= count_) throw Error(ErrorCode::PreconditionViolation, "row index out of range");
        const auto r = row(idx);
        values.insert(values.end(), r.begin(), r.end());
        if (labels_) labels->push_back((*labels_)[idx]);
    }
    return FeatureSet(indices.size(), dim_, std::move(values), std::move(labels),
                      labels_ ? std::optional<std::uint32_t>(class_count_) : std::nullopt, source_tag_);
}

FeatureSet FeatureSet::rows_with_label(ClassId label) const {
    if (!labels_) throw Error(ErrorCode::LabelMismatch, "feature set has no labels");
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < count_; ++i)
        if ((*labels_)[i] == label) indices.push_back(i);
    if (indices.empty())
        throw Error(ErrorCode::ClassTooSmall, "class " + std::to_string(label) + " has no samples");
    return select_rows(indices);
}

FeatureSet FeatureSet::with_source_tag(std::string tag) const {
    FeatureSet copy = *this;
    copy.source_tag_ = std::move(tag);
    return copy;
}

PosteriorSet::PosteriorSet(std::size_t count, std::size_t classes, std::vector<float> values)
    : count_(count), classes_(classes), values_(std::move(values)) {
    if (count_ < 1 || classes_ < 1)
        throw Error(ErrorCode::PreconditionViolation, "posterior set needs N >= 1 and K >= 1");
    if (values_.size() != count_ * classes_)
        throw Error(ErrorCode::PreconditionViolation, "posterior values do not match N x K");
    for (std::size_t i = 0; i < count_; ++i) {
        double sum = 0.0;
        for (float p : row(i)) {
            if (!std::isfinite(p)) throw Error(ErrorCode::NonFiniteValue, "non-finite posterior in row " + std::to_string(i));
            if (p < 0.0f) throw Error(ErrorCode::InvalidValue, "negative posterior in row " + std::to_string(i));
            sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance)
            throw Error(ErrorCode::InvalidValue, "posterior row " + std::to_string(i) + " sums to " + std::to_string(sum));
    }
}

PosteriorSet PosteriorSet::select_rows(std::span<const std::size_t> indices) const {
    std::vector<float> values;
    values.reserve(indices.size() * classes_);
    for (std::size_t idx : indices) {
        if (idx >= count_) throw Error(ErrorCode::PreconditionViolation, "row index out of range");
        const auto r = row(idx);
        values.insert(values.end(), r.begin(), r.end());
    }
    return PosteriorSet(indices.size(), classes_, std::move(values));
}

}  // namespace genmetrics
