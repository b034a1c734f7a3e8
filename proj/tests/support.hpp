#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "genmetrics/feature_set.hpp"
#include "oracles/oracles.hpp"

namespace test_support {

inline std::filesystem::path data_dir() { return GENMETRICS_TEST_DATA_DIR; }

// Fresh directory under the build tree, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& name) {
        path_ = std::filesystem::temp_directory_path() / ("genmetrics_test_" + name + "_" +
                                                           std::to_string(std::random_device{}()));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// Gaussian features with per-dimension scale and shift.
inline genmetrics::FeatureSet gaussian_features(std::size_t n, std::size_t d, std::uint64_t seed,
                                                double shift = 0.0, double scale = 1.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<float> values(n * d);
    for (auto& v : values) v = static_cast<float>(shift + scale * normal(gen));
    return genmetrics::FeatureSet(n, d, std::move(values));
}

inline oracle::Rows rows_of(const genmetrics::FeatureSet& fs) {
    oracle::Rows rows(fs.count());
    for (std::size_t i = 0; i < fs.count(); ++i) {
        const auto r = fs.row(i);
        rows[i].assign(r.begin(), r.end());
    }
    return rows;
}

inline genmetrics::FeatureSet from_rows(const std::vector<std::vector<float>>& rows) {
    std::vector<float> values;
    for (const auto& r : rows) values.insert(values.end(), r.begin(), r.end());
    return genmetrics::FeatureSet(rows.size(), rows.front().size(), std::move(values));
}

}  // namespace test_support
