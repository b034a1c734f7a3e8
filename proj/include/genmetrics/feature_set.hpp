#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace genmetrics {

using ClassId = std::uint32_t;

// N x D feature matrix (row-major f32, the precision features are extracted
// and stored at) with optional per-row class labels.
class FeatureSet {
public:
    FeatureSet() = default;
    // Throws PreconditionViolation for empty/mis-sized input, NonFiniteValue
    // for NaN/Inf, LabelOutOfRange when a label is >= class_count. Without an
    // explicit class_count, it is max(label) + 1.
    FeatureSet(std::size_t count, std::size_t dim, std::vector<float> values,
               std::optional<std::vector<ClassId>> labels = std::nullopt,
               std::optional<std::uint32_t> class_count = std::nullopt, std::string source_tag = {});

    std::size_t count() const noexcept { return count_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<const float> values() const noexcept { return values_; }
    std::span<const float> row(std::size_t i) const noexcept {
        return std::span<const float>(values_).subspan(i * dim_, dim_);
    }
    bool has_labels() const noexcept { return labels_.has_value(); }
    std::span<const ClassId> labels() const noexcept {
        return labels_ ? std::span<const ClassId>(*labels_) : std::span<const ClassId>();
    }
    // 0 when unlabeled.
    std::uint32_t class_count() const noexcept { return class_count_; }
    const std::string& source_tag() const noexcept { return source_tag_; }

    FeatureSet select_rows(std::span<const std::size_t> indices) const;
    // Rows carrying `label`, in original order.
    FeatureSet rows_with_label(ClassId label) const;
    FeatureSet with_source_tag(std::string tag) const;

    // Compares data only; source_tag is provenance, not content.
    friend bool operator==(const FeatureSet& a, const FeatureSet& b) {
        return a.count_ == b.count_ && a.dim_ == b.dim_ && a.values_ == b.values_ && a.labels_ == b.labels_ &&
               a.class_count_ == b.class_count_;
    }

private:
    std::size_t count_ = 0;
    std::size_t dim_ = 0;
    std::vector<float> values_;
    std::optional<std::vector<ClassId>> labels_;
    std::uint32_t class_count_ = 0;
    std::string source_tag_;
};

// N x K class posteriors; rows are probability vectors (sum 1 within 1e-5).
class PosteriorSet {
public:
    static constexpr double kRowSumTolerance = 1e-5;

    PosteriorSet() = default;
    PosteriorSet(std::size_t count, std::size_t classes, std::vector<float> values);

    std::size_t count() const noexcept { return count_; }
    std::size_t classes() const noexcept { return classes_; }
    std::span<const float> values() const noexcept { return values_; }
    std::span<const float> row(std::size_t i) const noexcept {
        return std::span<const float>(values_).subspan(i * classes_, classes_);
    }

    PosteriorSet select_rows(std::span<const std::size_t> indices) const;

    friend bool operator==(const PosteriorSet&, const PosteriorSet&) = default;

private:
    std::size_t count_ = 0;
    std::size_t classes_ = 0;
    std::vector<float> values_;
};

}  // namespace genmetrics
