#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "genmetrics/feature_set.hpp"
#include "genmetrics/gaussian.hpp"

namespace genmetrics {

enum class CurveMode { RelativeToGenerated, RealToReal };

std::string_view to_string(CurveMode mode) noexcept;

inline const std::vector<double> kDefaultFractions{0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0};

struct CurveOptions {
    std::string backbone;
    bool with_replacement = false;
};

struct EfficiencyCurve {
    std::vector<double> fractions;
    std::vector<std::size_t> sample_counts;
    std::vector<double> values;
    std::string backbone;
    CurveMode mode = CurveMode::RelativeToGenerated;
    double reference_fd = 0.0;
    std::uint64_t seed = 0;
    bool with_replacement = false;
};

// A full-set FD at or below this fraction of tr(S_source) + tr(S_target) is
// rounding noise, so the ratio would be meaningless.
inline constexpr double kDegenerateReferenceTolerance = 1e-9;

// floor(f * population), with a 1e-9 guard against products like 0.29 * 100
// landing just under an integer.
std::size_t fraction_count(double fraction, std::size_t population) noexcept;

// FD(source, subsample_f(target)) / FD(source, target) for each fraction.
// Fractions must be strictly increasing in (0, 1] and end at 1.0; a fraction
// whose count equals the full set reuses the full-set FD, so the terminal
// value is exactly 1. Errors: FractionTooSmall (fewer than 2 rows),
// DegenerateReference (full-set FD is 0 up to
// kDegenerateReferenceTolerance), PreconditionViolation.
EfficiencyCurve relative_fd_curve(const GaussianSummary& source, const FeatureSet& target,
                                  std::span<const double> fractions, std::uint64_t seed,
                                  const CurveOptions& options = {});

// FD(summarize(source), summarize(subsample_f(source))) for each fraction.
EfficiencyCurve real_to_real_curve(const FeatureSet& source, std::span<const double> fractions,
                                   std::uint64_t seed, const CurveOptions& options = {});

// "fraction,value" rows.
std::string curve_to_csv(const EfficiencyCurve& curve);
nlohmann::json curve_to_json(const EfficiencyCurve& curve);

}  // namespace genmetrics
