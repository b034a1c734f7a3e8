#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "genmetrics/report.hpp"

namespace genmetrics {

struct RankedModel {
    std::string model_name;
    std::map<std::string, double> values;
    std::map<std::string, int> ranks;
    double average_rank = 0.0;
};

// Per-metric competition ranking ("1,1,3": ties share the better rank), Top-1
// and Top-2 marks, and the mean rank per model. Rows are ordered by average
// rank, then model name.
struct RankingTable {
    std::string backbone;
    std::vector<std::string> metrics;
    std::map<std::string, Direction> directions;
    std::vector<RankedModel> rows;
    static constexpr const char* kTieConvention = "min";
};

// Errors: PreconditionViolation (empty list), HeterogeneousReports
// (different backbone, metric set or direction).
RankingTable rank_models(std::span<const MetricReport> reports);

// "Top-1", "Top-2" or "".
std::string rank_mark(int rank);

std::string ranking_to_csv(const RankingTable& table);
std::string ranking_to_text(const RankingTable& table);
nlohmann::json ranking_to_json(const RankingTable& table);
RankingTable ranking_from_json(const nlohmann::json& j);

}  // namespace genmetrics
