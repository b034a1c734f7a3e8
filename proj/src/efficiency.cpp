#include "genmetrics/efficiency.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "genmetrics/error.hpp"
#include "genmetrics/frechet.hpp"
#include "genmetrics/parallel.hpp"
#include "genmetrics/rng.hpp"

namespace genmetrics {

std::string_view to_string(CurveMode mode) noexcept {
    return mode == CurveMode::RelativeToGenerated ? "relative_fd" : "real_to_real_fd";
}

std::size_t fraction_count(double fraction, std::size_t population) noexcept {
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(population) + 1e-9));
}

namespace {

std::vector<std::size_t> validate_fractions(std::span<const double> fractions, std::size_t population) {
    if (fractions.empty()) throw Error(ErrorCode::PreconditionViolation, "fraction grid is empty");
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        const double f = fractions[i];
        if (!(f > 0.0 && f <= 1.0))
            throw Error(ErrorCode::PreconditionViolation, "fraction " + std::to_string(f) + " outside (0, 1]");
        if (i > 0 && !(f > fractions[i - 1]))
            throw Error(ErrorCode::PreconditionViolation, "fractions must be strictly increasing");
        const std::size_t m = fraction_count(f, population);
        if (m < 2)
            throw Error(ErrorCode::FractionTooSmall, "fraction " + std::to_string(f) + " of " +
                                                         std::to_string(population) + " rows leaves " +
                                                         std::to_string(m) + " samples");
        counts.push_back(m);
    }
    if (fractions.back() != 1.0) throw Error(ErrorCode::PreconditionViolation, "fraction grid must end at 1.0");
    return counts;
}

FeatureSet subsample(const FeatureSet& fs, std::size_t m, std::uint64_t seed, bool with_replacement) {
    const auto idx = sample_indices(fs.count(), m, derive_seed(seed, m), with_replacement);
    return fs.select_rows(idx);
}

}  // namespace

EfficiencyCurve relative_fd_curve(const GaussianSummary& source, const FeatureSet& target,
                                  std::span<const double> fractions, std::uint64_t seed,
                                  const CurveOptions& options) {
    const auto counts = validate_fractions(fractions, target.count());
    EfficiencyCurve curve;
    curve.fractions.assign(fractions.begin(), fractions.end());
    curve.sample_counts = counts;
    curve.backbone = options.backbone;
    curve.mode = CurveMode::RelativeToGenerated;
    curve.seed = seed;
    curve.with_replacement = options.with_replacement;
    const GaussianSummary full = summarize(target);
    curve.reference_fd = frechet_distance(source, full);
    const double spread = source.cov.trace() + full.cov.trace();
    if (curve.reference_fd <= kDegenerateReferenceTolerance * spread)
        throw Error(ErrorCode::DegenerateReference, "full-set FD is 0 to rounding; relative FD is undefined");

    curve.values.assign(counts.size(), 0.0);
    parallel_for(counts.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            if (counts[p] == target.count() && !options.with_replacement) {
                curve.values[p] = 1.0;
                continue;
            }
            const auto sub = subsample(target, counts[p], seed, options.with_replacement);
            curve.values[p] = frechet_distance(source, summarize(sub)) / curve.reference_fd;
        }
    });
    return curve;
}

EfficiencyCurve real_to_real_curve(const FeatureSet& source, std::span<const double> fractions,
                                   std::uint64_t seed, const CurveOptions& options) {
    const auto counts = validate_fractions(fractions, source.count());
    EfficiencyCurve curve;
    curve.fractions.assign(fractions.begin(), fractions.end());
    curve.sample_counts = counts;
    curve.backbone = options.backbone;
    curve.mode = CurveMode::RealToReal;
    curve.seed = seed;
    curve.with_replacement = options.with_replacement;

    const GaussianSummary full = summarize(source);
    curve.values.assign(counts.size(), 0.0);
    parallel_for(counts.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            if (counts[p] == source.count() && !options.with_replacement) {
                curve.values[p] = frechet_distance(full, full);
                continue;
            }
            const auto sub = subsample(source, counts[p], seed, options.with_replacement);
            curve.values[p] = frechet_distance(full, summarize(sub));
        }
    });
    return curve;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string curve_to_csv(const EfficiencyCurve& curve) {
    std::string out = "fraction,value\n";
    for (std::size_t i = 0; i < curve.fractions.size(); ++i)
        out += format_double(curve.fractions[i]) + "," + format_double(curve.values[i]) + "\n";
    return out;
}

nlohmann::json curve_to_json(const EfficiencyCurve& curve) {
    nlohmann::json j;
    j["format"] = "genmetrics.curve/1";
    j["mode"] = std::string(to_string(curve.mode));
    j["backbone"] = curve.backbone;
    j["seed"] = curve.seed;
    j["sampling"] = curve.with_replacement ? "with_replacement" : "without_replacement";
    j["generator"] = "xoshiro256** seeded via splitmix64";
    if (curve.mode == CurveMode::RelativeToGenerated) j["reference_fd"] = curve.reference_fd;
    j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < curve.fractions.size(); ++i)
        j["points"].push_back(
            {{"fraction", curve.fractions[i]}, {"sample_count", curve.sample_counts[i]}, {"value", curve.values[i]}});
    return j;
}

}  // namespace genmetrics
