#include "genmetrics/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genmetrics/error.hpp"
#include "genmetrics/parallel.hpp"

namespace genmetrics {

double squared_distance(std::span<const float> a, std::span<const float> b) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
        acc += d * d;
    }
    return acc;
}

namespace {

void check_k(std::size_t k, std::size_t n, const char* what) {
    if (k < 1 || k >= n)
        throw Error(ErrorCode::KTooLarge, std::string(what) + ": k=" + std::to_string(k) +
                                              " must satisfy 1 <= k < " + std::to_string(n));
}

}  // namespace

std::vector<double> knn_radii_squared(const FeatureSet& fs, std::size_t k) {
    const std::size_t n = fs.count();
    check_k(k, n, "knn radii");
    std::vector<double> radii(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dist(n - 1);
        for (std::size_t i = begin; i < end; ++i) {
            const auto ri = fs.row(i);
            std::size_t m = 0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) dist[m++] = squared_distance(ri, fs.row(j));
            std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k - 1), dist.end());
            radii[i] = dist[k - 1];
        }
    });
    return radii;
}

std::vector<double> knn_radii(const FeatureSet& fs, std::size_t k) {
    auto radii = knn_radii_squared(fs, k);
    for (double& r : radii) r = std::sqrt(r);
    return radii;
}

PrdcResult prdc(const FeatureSet& src, const FeatureSet& tgt, const ManifoldParams& params) {
    if (src.dim() != tgt.dim())
        throw Error(ErrorCode::DimensionMismatch,
                    "feature dims differ: " + std::to_string(src.dim()) + " vs " + std::to_string(tgt.dim()));
    const std::size_t n = src.count();
    const std::size_t m = tgt.count();
    check_k(params.k_pr, n, "precision (source)");
    check_k(params.k_pr, m, "recall (target)");
    check_k(params.k_dc, n, "density/coverage (source)");
    check_k(params.k_dc, m, "density/coverage (target)");

    const auto src_pr = knn_radii_squared(src, params.k_pr);
    const auto tgt_pr = knn_radii_squared(tgt, params.k_pr);
    const auto src_dc = params.k_dc == params.k_pr ? src_pr : knn_radii_squared(src, params.k_dc);

    // Per-target-row flags/counts, then per-source-row flags; each worker owns
    // disjoint rows, totals are integer sums.
    std::vector<char> in_real_manifold(m, 0);
    std::vector<std::size_t> ball_hits(m, 0);
    parallel_for(m, [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto t = tgt.row(j);
            for (std::size_t i = 0; i < n; ++i) {
                const double d2 = squared_distance(t, src.row(i));
                if (d2 <= src_pr[i]) in_real_manifold[j] = 1;
                if (d2 <= src_dc[i]) ++ball_hits[j];
            }
        }
    });

    std::vector<char> in_fake_manifold(n, 0);
    std::vector<char> covered(n, 0);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto s = src.row(i);
            for (std::size_t j = 0; j < m; ++j) {
                const double d2 = squared_distance(tgt.row(j), s);
                if (d2 <= tgt_pr[j]) in_fake_manifold[i] = 1;
                if (d2 <= src_dc[i]) covered[i] = 1;
                if (in_fake_manifold[i] && covered[i]) break;
            }
        }
    });

    const auto count = [](const std::vector<char>& flags) {
        return static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
    };
    std::size_t total_hits = 0;
    for (std::size_t h : ball_hits) total_hits += h;

    PrdcResult r;
    r.precision = static_cast<double>(count(in_real_manifold)) / static_cast<double>(m);
    r.recall = static_cast<double>(count(in_fake_manifold)) / static_cast<double>(n);
    r.density = static_cast<double>(total_hits) / (static_cast<double>(params.k_dc) * static_cast<double>(m));
    r.coverage = static_cast<double>(count(covered)) / static_cast<double>(n);
    return r;
}

}  // namespace genmetrics
