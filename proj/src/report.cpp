// Copyright 2026 The dictlint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dictlint/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dictlint {

namespace {

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char raw : s) {
        unsigned char c = static_cast<unsigned char>(raw);
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (c < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(raw);
                }
        }
    }
    out.push_back('"');
    return out;
}

std::string json_string_array(const std::vector<std::string>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += json_escape(values[i]);
    }
    out += "]";
    return out;
}

// Infinite scores are serialized as the distinguished marker "inf".
std::string json_score(double score) {
    if (std::isinf(score)) return "\"inf\"";
    return fixed6(score);
}

std::string csv_escape(std::string_view s) {
    bool needs_quotes = s.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::string join(const std::vector<std::string>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out.push_back(sep);
        out += values[i];
    }
    return out;
}

bool anomaly_order(const Anomaly& a, const Anomaly& b) {
    if (a.score != b.score) return a.score > b.score;  // descending; +inf first
    if (a.detector_id != b.detector_id) return a.detector_id < b.detector_id;
    if (a.entry_index != b.entry_index) return a.entry_index < b.entry_index;
    if (a.occurrence_index != b.occurrence_index) return a.occurrence_index < b.occurrence_index;
    if (a.field_names != b.field_names) return a.field_names < b.field_names;
    return a.observed_values < b.observed_values;
}

// Splits one CSV record, handling quoted fields.
std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

}  // namespace

Report assemble_report(std::vector<std::vector<Anomaly>> anomaly_lists, RunMetadata meta) {
    Report report;
    report.meta = std::move(meta);
    for (auto& list : anomaly_lists) {
        for (Anomaly& a : list) {
            ++report.per_detector_counts[a.detector_id];
            report.anomalies.push_back(std::move(a));
        }
    }
    std::sort(report.anomalies.begin(), report.anomalies.end(), anomaly_order);
    return report;
}

OverlapTable overlap_table(const std::vector<std::string>& ranked_a,
                           const std::vector<std::string>& ranked_b,
                           const std::vector<std::size_t>& cutoffs) {
    auto check_unique = [](const std::vector<std::string>& ranked, const char* name) {
        std::set<std::string> seen(ranked.begin(), ranked.end());
        if (seen.size() != ranked.size()) {
            throw std::invalid_argument(std::string("overlap_table: duplicate ids in ranking ") +
                                        name);
        }
    };
    check_unique(ranked_a, "a");
    check_unique(ranked_b, "b");

    OverlapTable table;
    std::size_t min_len = std::min(ranked_a.size(), ranked_b.size());
    for (std::size_t k : cutoffs) {
        std::size_t used = std::min(k, min_len);
        if (used < k) {
            table.notes.push_back("cutoff " + std::to_string(k) + " clamped to " +
                                  std::to_string(used));
        }
        std::set<std::string> top_a(ranked_a.begin(),
                                    ranked_a.begin() + static_cast<std::ptrdiff_t>(used));
        std::size_t common = 0;
        for (std::size_t i = 0; i < used; ++i) {
            if (top_a.count(ranked_b[i]) > 0) ++common;
        }
        int percent = used == 0
                          ? 0
                          : static_cast<int>(std::lround(100.0 * static_cast<double>(common) /
                                                         static_cast<double>(used)));
        table.rows.push_back(OverlapRow{k, common, percent});
    }
    return table;
}

PrecisionCurve precision_curve(const Report& report, const LabelMap& labels,
                               const std::vector<double>& cutoffs) {
    std::set<AnomalyLocator> present;
    for (const Anomaly& a : report.anomalies) {
        present.emplace(a.detector_id, a.entry_index, a.occurrence_index);
    }
    for (const auto& [locator, label] : labels) {
        if (present.count(locator) == 0) {
            throw std::invalid_argument(
                "precision_curve: labeled locator not in report: " + std::get<0>(locator) + ":" +
                std::to_string(std::get<1>(locator)) + ":" + std::to_string(std::get<2>(locator)));
        }
    }

    PrecisionCurve curve;
    for (double cutoff : cutoffs) {
        double sum = 0.0;
        std::size_t support = 0;
        for (const Anomaly& a : report.anomalies) {
            if (a.score < cutoff) continue;
            auto it = labels.find({a.detector_id, a.entry_index, a.occurrence_index});
            if (it == labels.end()) continue;  // unlabeled anomalies are excluded
            sum += it->second;
            ++support;
        }
        PrecisionPoint point;
        point.score_cutoff = cutoff;
        point.support = support;
        if (support > 0) point.mean_label = sum / static_cast<double>(support);
        curve.points.push_back(point);
    }
    return curve;
}

std::string serialize_report(const Report& report, ReportFormat format) {
    if (format == ReportFormat::kCsv) {
        std::string out =
            "detector,fields,entry_index,occurrence_index,values,score,threshold,explanation\n";
        for (const Anomaly& a : report.anomalies) {
            out += csv_escape(a.detector_id) + ",";
            out += csv_escape(join(a.field_names, '|')) + ",";
            out += std::to_string(a.entry_index) + ",";
            out += std::to_string(a.occurrence_index) + ",";
            out += csv_escape(join(a.observed_values, '|')) + ",";
            out += (std::isinf(a.score) ? "inf" : fixed6(a.score)) + ",";
            out += fixed6(a.threshold) + ",";
            out += csv_escape(a.explanation) + "\n";
        }
        return out;
    }

    std::string out = "{\n  \"meta\": {";
    out += "\"input\": " + json_escape(report.meta.input) + ", ";
    out += "\"config_digest\": " + json_escape(report.meta.config_digest) + ", ";
    out += "\"version\": " + json_escape(report.meta.version) + ", ";
    out += "\"timestamp\": " + json_escape(report.meta.timestamp) + "},\n";

    out += "  \"counts\": {";
    bool first = true;
    for (const auto& [detector, count] : report.per_detector_counts) {
        if (!first) out += ", ";
        first = false;
        out += json_escape(detector) + ": " + std::to_string(count);
    }
    out += "},\n";

    out += "  \"anomalies\": [";
    for (std::size_t i = 0; i < report.anomalies.size(); ++i) {
        const Anomaly& a = report.anomalies[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"detector\": " + json_escape(a.detector_id);
        out += ", \"fields\": " + json_string_array(a.field_names);
        out += ", \"entry_index\": " + std::to_string(a.entry_index);
        out += ", \"occurrence_index\": " + std::to_string(a.occurrence_index);
        out += ", \"values\": " + json_string_array(a.observed_values);
        out += ", \"score\": " + json_score(a.score);
        out += ", \"threshold\": " + fixed6(a.threshold);
        out += ", \"explanation\": " + json_escape(a.explanation) + "}";
    }
    out += report.anomalies.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

Report parse_report_json(std::string_view text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    Report report;
    const auto& meta = doc.at("meta");
    report.meta.input = meta.at("input").get<std::string>();
    report.meta.config_digest = meta.at("config_digest").get<std::string>();
    report.meta.version = meta.at("version").get<std::string>();
    report.meta.timestamp = meta.at("timestamp").get<std::string>();
    for (const auto& [detector, count] : doc.at("counts").items()) {
        report.per_detector_counts[detector] = count.get<std::size_t>();
    }
    for (const auto& item : doc.at("anomalies")) {
        Anomaly a;
        a.detector_id = item.at("detector").get<std::string>();
        a.field_names = item.at("fields").get<std::vector<std::string>>();
        a.entry_index = item.at("entry_index").get<std::size_t>();
        a.occurrence_index = item.at("occurrence_index").get<std::size_t>();
        a.observed_values = item.at("values").get<std::vector<std::string>>();
        const auto& score = item.at("score");
        a.score = score.is_string() ? std::numeric_limits<double>::infinity()
                                    : score.get<double>();
        a.threshold = item.at("threshold").get<double>();
        a.explanation = item.at("explanation").get<std::string>();
        report.anomalies.push_back(std::move(a));
    }
    return report;
}

LabelMap parse_labels_csv(std::string_view text) {
    LabelMap labels;
    std::istringstream in{std::string(text)};
    std::string line;
    bool header = true;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line != "detector,entry_index,occurrence_index,label") {
                throw std::invalid_argument(
                    "labels: expected header detector,entry_index,occurrence_index,label");
            }
            continue;
        }
        std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw std::invalid_argument("labels: line " + std::to_string(line_no) +
                                        ": expected 4 fields");
        }
        double label = std::stod(fields[3]);
        if (label < 0.0 || label > 1.0) {
            throw std::invalid_argument("labels: line " + std::to_string(line_no) +
                                        ": label must be in [0,1]");
        }
        labels[{fields[0], std::stoul(fields[1]), std::stoul(fields[2])}] = label;
    }
    return labels;
}

std::string serialize_overlap(const OverlapTable& table, ReportFormat format) {
    if (format == ReportFormat::kCsv) {
        std::string out = "cutoff,common,percent\n";
        for (const OverlapRow& row : table.rows) {
            out += std::to_string(row.cutoff) + "," + std::to_string(row.common) + "," +
                   std::to_string(row.percent) + "\n";
        }
        return out;
    }
    std::string out = "{\n  \"rows\": [";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"cutoff\": " + std::to_string(table.rows[i].cutoff) +
               ", \"common\": " + std::to_string(table.rows[i].common) +
               ", \"percent\": " + std::to_string(table.rows[i].percent) + "}";
    }
    out += table.rows.empty() ? "],\n" : "\n  ],\n";
    out += "  \"notes\": " + json_string_array(table.notes) + "\n}\n";
    return out;
}

std::string serialize_precision(const PrecisionCurve& curve, ReportFormat format) {
    if (format == ReportFormat::kCsv) {
        std::string out = "cutoff,mean_label,support\n";
        for (const PrecisionPoint& point : curve.points) {
            out += fixed6(point.score_cutoff) + ",";
            out += point.mean_label ? fixed6(*point.mean_label) : "NA";
            out += "," + std::to_string(point.support) + "\n";
        }
        return out;
    }
    std::string out = "{\n  \"points\": [";
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
        const PrecisionPoint& point = curve.points[i];
        out += i == 0 ? "\n" : ",\n";
        out += "    {\"cutoff\": " + fixed6(point.score_cutoff) + ", \"mean_label\": " +
               (point.mean_label ? fixed6(*point.mean_label) : "null") +
               ", \"support\": " + std::to_string(point.support) + "}";
    }
    out += curve.points.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

}  // namespace dictlint
