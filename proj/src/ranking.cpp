#include "genmetrics/ranking.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "genmetrics/error.hpp"

namespace genmetrics {

RankingTable rank_models(std::span<const MetricReport> reports) {
    if (reports.empty()) throw Error(ErrorCode::PreconditionViolation, "no reports to rank");
    const MetricReport& first = reports.front();

    RankingTable table;
    table.backbone = first.backbone;
    for (const auto& [name, e] : first.entries) {
        table.metrics.push_back(name);
        table.directions[name] = e.direction;
    }
    for (const auto& r : reports) {
        if (r.backbone != first.backbone)
            throw Error(ErrorCode::HeterogeneousReports,
                        "backbone " + r.backbone + " of " + r.model_name + " differs from " + first.backbone);
        if (r.entries.size() != first.entries.size())
            throw Error(ErrorCode::HeterogeneousReports, "metric set of " + r.model_name + " differs");
        for (const auto& [name, e] : r.entries) {
            const auto it = table.directions.find(name);
            if (it == table.directions.end())
                throw Error(ErrorCode::HeterogeneousReports, "metric " + name + " of " + r.model_name + " not shared");
            if (it->second != e.direction)
                throw Error(ErrorCode::HeterogeneousReports, "direction of " + name + " differs for " + r.model_name);
        }
    }

    table.rows.resize(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        table.rows[i].model_name = reports[i].model_name;
        for (const auto& [name, e] : reports[i].entries) table.rows[i].values[name] = e.value;
    }
    for (const auto& metric : table.metrics) {
        const bool lower = table.directions[metric] == Direction::LowerBetter;
        for (auto& row : table.rows) {
            const double v = row.values[metric];
            int better = 0;
            for (const auto& other : table.rows) {
                const double o = other.values.at(metric);
                if (lower ? o < v : o > v) ++better;
            }
            row.ranks[metric] = better + 1;
        }
    }
    for (auto& row : table.rows) {
        double sum = 0.0;
        for (const auto& [metric, rank] : row.ranks) sum += rank;
        row.average_rank = table.metrics.empty() ? 1.0 : sum / static_cast<double>(table.metrics.size());
    }
    std::stable_sort(table.rows.begin(), table.rows.end(), [](const RankedModel& a, const RankedModel& b) {
        if (a.average_rank != b.average_rank) return a.average_rank < b.average_rank;
        return a.model_name < b.model_name;
    });
    return table;
}

std::string rank_mark(int rank) {
    if (rank == 1) return "Top-1";
    if (rank == 2) return "Top-2";
    return {};
}

namespace {

std::string exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string short_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string ranking_to_csv(const RankingTable& table) {
    std::string out = "model";
    for (const auto& m : table.metrics) out += "," + csv_field(m) + "," + csv_field(m + " rank");
    out += ",avg_rank\n";
    for (const auto& row : table.rows) {
        out += csv_field(row.model_name);
        for (const auto& m : table.metrics) out += "," + exact(row.values.at(m)) + "," + std::to_string(row.ranks.at(m));
        out += "," + exact(row.average_rank) + "\n";
    }
    return out;
}

std::string ranking_to_text(const RankingTable& table) {
    // cells: value plus [1]/[2] for Top-1/Top-2
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{"Model"};
    for (const auto& m : table.metrics)
        header.push_back(m + (table.directions.at(m) == Direction::LowerBetter ? " (lower)" : " (higher)"));
    header.push_back("Avg. Rank");
    cells.push_back(header);
    for (const auto& row : table.rows) {
        std::vector<std::string> line{row.model_name};
        for (const auto& m : table.metrics) {
            const int rank = row.ranks.at(m);
            std::string cell = short_value(row.values.at(m));
            if (rank <= 2) cell += " [" + std::to_string(rank) + "]";
            line.push_back(cell);
        }
        line.push_back(short_value(row.average_rank));
        cells.push_back(line);
    }
    std::vector<std::size_t> widths(header.size(), 0);
    for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c) widths[c] = std::max(widths[c], line[c].size());
    std::ostringstream out;
    out << "backbone: " << table.backbone << "  ([1] Top-1, [2] Top-2; ties share the minimum rank)\n";
    for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            out << line[c];
            if (c + 1 < line.size()) out << std::string(widths[c] - line[c].size() + 2, ' ');
        }
        out << "\n";
    }
    return out.str();
}

nlohmann::json ranking_to_json(const RankingTable& table) {
    nlohmann::json j;
    j["format"] = "genmetrics.ranking/1";
    j["backbone"] = table.backbone;
    j["tie_convention"] = RankingTable::kTieConvention;
    j["metrics"] = nlohmann::json::array();
    for (const auto& m : table.metrics)
        j["metrics"].push_back({{"name", m}, {"direction", std::string(to_string(table.directions.at(m)))}});
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r;
        r["model_name"] = row.model_name;
        r["average_rank"] = row.average_rank;
        r["cells"] = nlohmann::json::object();
        for (const auto& m : table.metrics)
            r["cells"][m] = {{"value", row.values.at(m)}, {"rank", row.ranks.at(m)}, {"mark", rank_mark(row.ranks.at(m))}};
        j["rows"].push_back(r);
    }
    return j;
}

RankingTable ranking_from_json(const nlohmann::json& j) {
    try {
        if (j.value("format", "") != "genmetrics.ranking/1")
            throw Error(ErrorCode::SchemaViolation, "not a genmetrics ranking document");
        RankingTable table;
        table.backbone = j.at("backbone").get<std::string>();
        for (const auto& m : j.at("metrics")) {
            const auto name = m.at("name").get<std::string>();
            table.metrics.push_back(name);
            table.directions[name] =
                m.at("direction").get<std::string>() == "lower_better" ? Direction::LowerBetter : Direction::HigherBetter;
        }
        for (const auto& r : j.at("rows")) {
            RankedModel row;
            row.model_name = r.at("model_name").get<std::string>();
            row.average_rank = r.at("average_rank").get<double>();
            for (const auto& m : table.metrics) {
                row.values[m] = r.at("cells").at(m).at("value").get<double>();
                row.ranks[m] = r.at("cells").at(m).at("rank").get<int>();
            }
            table.rows.push_back(std::move(row));
        }
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SchemaViolation, std::string("bad ranking document: ") + e.what());
    }
}

}  // namespace genmetrics
