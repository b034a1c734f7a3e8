#include "genmetrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "genmetrics/error.hpp"

namespace genmetrics {

std::string_view to_string(Direction d) noexcept {
    return d == Direction::HigherBetter ? "higher_better" : "lower_better";
}

std::string_view to_string(MetricKind k) noexcept {
    switch (k) {
        case MetricKind::Score: return "score";
        case MetricKind::FrechetDistance: return "fd";
        case MetricKind::Precision: return "precision";
        case MetricKind::Recall: return "recall";
        case MetricKind::Density: return "density";
        case MetricKind::Coverage: return "coverage";
        case MetricKind::IntraClassFD: return "intra_class_fd";
        case MetricKind::Top1: return "top1_accuracy";
        case MetricKind::Top5: return "top5_accuracy";
    }
    return "?";
}

namespace {

constexpr MetricKind kAllKinds[] = {MetricKind::Score,   MetricKind::FrechetDistance, MetricKind::Precision,
                                    MetricKind::Recall,  MetricKind::Density,         MetricKind::Coverage,
                                    MetricKind::IntraClassFD, MetricKind::Top1,       MetricKind::Top5};

std::optional<MetricKind> parse_kind(std::string_view s) {
    for (MetricKind k : kAllKinds)
        if (to_string(k) == s) return k;
    return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view s) {
    if (s == "higher_better") return Direction::HigherBetter;
    if (s == "lower_better") return Direction::LowerBetter;
    return std::nullopt;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

Direction direction_of(MetricKind kind) noexcept {
    return kind == MetricKind::FrechetDistance || kind == MetricKind::IntraClassFD ? Direction::LowerBetter
                                                                                   : Direction::HigherBetter;
}

std::string metric_name(const BackboneSpec& backbone, MetricKind kind) {
    switch (kind) {
        case MetricKind::Score: return backbone.score_name;
        case MetricKind::FrechetDistance: return backbone.fd_name;
        case MetricKind::Precision: return backbone.precision_name();
        case MetricKind::Recall: return backbone.recall_name();
        case MetricKind::Density: return backbone.density_name();
        case MetricKind::Coverage: return backbone.coverage_name();
        case MetricKind::IntraClassFD: return backbone.intra_class_fd_name();
        case MetricKind::Top1: return std::string(kTop1Name);
        case MetricKind::Top5: return std::string(kTop5Name);
    }
    return {};
}

void MetricReport::set(const BackboneSpec& spec, MetricKind kind, double value) {
    entries[metric_name(spec, kind)] = MetricEntry{kind, value, direction_of(kind)};
}

nlohmann::json report_to_json(const MetricReport& report) {
    nlohmann::json j;
    j["format"] = std::string(kReportFormat);
    j["model_name"] = report.model_name;
    j["backbone"] = report.backbone;
    j["entries"] = nlohmann::json::object();
    for (const auto& [name, e] : report.entries)
        j["entries"][name] = {{"kind", std::string(to_string(e.kind))},
                              {"value", e.value},
                              {"direction", std::string(to_string(e.direction))}};
    const auto& p = report.protocol;
    nlohmann::json proto;
    proto["reference_split"] = p.reference_split;
    proto["reference_count"] = p.reference_count;
    proto["generated_count"] = p.generated_count;
    proto["resizers_used"] = p.resizers_used;
    proto["friendly_resizer_override"] = p.friendly_resizer_override;
    proto["toolkit_version"] = p.toolkit_version;
    proto["settings"] = nlohmann::json::object();
    for (const auto& [k, v] : p.settings) proto["settings"][k] = v;
    j["protocol"] = proto;
    j["notes"] = report.notes;
    return j;
}

std::vector<std::string> validate_report_json(const nlohmann::json& j) {
    std::vector<std::string> errors;
    auto need = [&](const nlohmann::json& obj, const char* key, auto pred, const char* type, const std::string& path) {
        if (!obj.contains(key)) {
            errors.push_back(path + key + ": missing");
            return false;
        }
        if (!pred(obj[key])) {
            errors.push_back(path + key + ": expected " + type);
            return false;
        }
        return true;
    };
    const auto is_string = [](const nlohmann::json& v) { return v.is_string(); };
    const auto is_object = [](const nlohmann::json& v) { return v.is_object(); };
    const auto is_count = [](const nlohmann::json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); };
    const auto is_bool = [](const nlohmann::json& v) { return v.is_boolean(); };
    const auto is_array = [](const nlohmann::json& v) { return v.is_array(); };

    const auto closed = [&](const nlohmann::json& obj, std::initializer_list<std::string_view> keys,
                            const std::string& path) {
        for (const auto& [k, v] : obj.items())
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) errors.push_back(path + k + ": unexpected key");
    };

    if (!j.is_object()) return {"report: expected object"};
    closed(j, {"format", "model_name", "backbone", "entries", "protocol", "notes"}, "");
    if (need(j, "format", is_string, "string", "") && j["format"] != kReportFormat)
        errors.push_back("format: expected " + std::string(kReportFormat));
    need(j, "model_name", is_string, "string", "");
    need(j, "backbone", is_string, "string", "");
    if (need(j, "entries", is_object, "object", "")) {
        for (const auto& [name, e] : j["entries"].items()) {
            const std::string path = "entries." + name + ".";
            if (!e.is_object()) {
                errors.push_back(path + ": expected object");
                continue;
            }
            closed(e, {"kind", "value", "direction"}, path);
            std::optional<MetricKind> kind;
            std::optional<Direction> dir;
            if (need(e, "kind", is_string, "string", path) && !(kind = parse_kind(e["kind"].get<std::string>())))
                errors.push_back(path + "kind: unknown metric kind");
            if (need(e, "direction", is_string, "string", path) &&
                !(dir = parse_direction(e["direction"].get<std::string>())))
                errors.push_back(path + "direction: unknown direction");
            if (need(e, "value", [](const auto& v) { return v.is_number(); }, "number", path) &&
                !std::isfinite(e["value"].get<double>()))
                errors.push_back(path + "value: not finite");
            if (kind && dir && direction_of(*kind) != *dir)
                errors.push_back(path + "direction: inconsistent with metric kind");
        }
    }
    if (need(j, "protocol", is_object, "object", "")) {
        const auto& p = j["protocol"];
        closed(p, {"reference_split", "reference_count", "generated_count", "resizers_used", "friendly_resizer_override",
                   "toolkit_version", "settings"},
               "protocol.");
        if (need(p, "reference_split", is_string, "string", "protocol.") && p["reference_split"].get<std::string>().empty())
            errors.push_back("protocol.reference_split: empty");
        need(p, "reference_count", is_count, "non-negative integer", "protocol.");
        need(p, "generated_count", is_count, "non-negative integer", "protocol.");
        if (need(p, "resizers_used", is_object, "object", "protocol."))
            for (const auto& [route, f] : p["resizers_used"].items())
                if (!f.is_string() || !parse_filter(f.get<std::string>()))
                    errors.push_back("protocol.resizers_used." + route + ": unknown filter");
        need(p, "friendly_resizer_override", is_bool, "boolean", "protocol.");
        need(p, "toolkit_version", is_string, "string", "protocol.");
        need(p, "settings", is_object, "object", "protocol.");
    }
    if (need(j, "notes", is_array, "array", ""))
        for (const auto& n : j["notes"])
            if (!n.is_string()) errors.push_back("notes: expected strings");
    return errors;
}

MetricReport report_from_json(const nlohmann::json& j) {
    const auto errors = validate_report_json(j);
    if (!errors.empty()) {
        std::string msg = "invalid report:";
        for (const auto& e : errors) msg += " " + e + ";";
        throw Error(ErrorCode::SchemaViolation, msg);
    }
    MetricReport r;
    r.model_name = j["model_name"].get<std::string>();
    r.backbone = j["backbone"].get<std::string>();
    for (const auto& [name, e] : j["entries"].items())
        r.entries[name] = MetricEntry{*parse_kind(e["kind"].get<std::string>()), e["value"].get<double>(),
                                      *parse_direction(e["direction"].get<std::string>())};
    const auto& p = j["protocol"];
    r.protocol.reference_split = p["reference_split"].get<std::string>();
    r.protocol.reference_count = p["reference_count"].get<std::size_t>();
    r.protocol.generated_count = p["generated_count"].get<std::size_t>();
    r.protocol.resizers_used = p["resizers_used"].get<std::map<std::string, std::string>>();
    r.protocol.friendly_resizer_override = p["friendly_resizer_override"].get<bool>();
    r.protocol.toolkit_version = p["toolkit_version"].get<std::string>();
    for (const auto& [k, v] : p["settings"].items()) r.protocol.settings[k] = v;
    r.notes = j["notes"].get<std::vector<std::string>>();
    return r;
}

std::string report_to_text(const MetricReport& report) {
    std::ostringstream out;
    out << "model: " << report.model_name << "\n";
    out << "backbone: " << report.backbone << "\n";
    std::size_t width = 6;
    for (const auto& [name, e] : report.entries) width = std::max(width, name.size());
    for (const auto& [name, e] : report.entries) {
        out << "  " << name << std::string(width - name.size() + 2, ' ') << format_value(e.value) << "  "
            << (e.direction == Direction::HigherBetter ? "(higher is better)" : "(lower is better)") << "\n";
    }
    const auto& p = report.protocol;
    out << "protocol: reference=" << p.reference_split << " (" << p.reference_count << " samples), generated="
        << p.generated_count;
    for (const auto& [route, filter] : p.resizers_used) out << ", " << route << "=" << filter;
    if (p.friendly_resizer_override) out << ", FRIENDLY RESIZER OVERRIDDEN";
    out << ", version " << p.toolkit_version << "\n";
    for (const auto& note : report.notes) out << "note: " << note << "\n";
    return out.str();
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string report_to_csv(const MetricReport& report) {
    std::string out = "model,backbone,metric,value,direction\n";
    for (const auto& [name, e] : report.entries) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
        out += csv_field(report.model_name) + "," + csv_field(report.backbone) + "," + csv_field(name) + "," + buf + "," +
               std::string(to_string(e.direction)) + "\n";
    }
    return out;
}

}  // namespace genmetrics
