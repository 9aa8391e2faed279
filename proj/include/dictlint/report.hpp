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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "dictlint/detectors.hpp"

namespace dictlint {

struct RunMetadata {
    std::string input;
    std::string config_digest;
    std::string version;
    std::string timestamp;
};

/// Merged detector findings, sorted by (score desc, detector, entry,
/// occurrence, fields, values) — a total, deterministic order.
struct Report {
    RunMetadata meta;
    std::vector<Anomaly> anomalies;
    std::map<std::string, std::size_t> per_detector_counts;
};

Report assemble_report(std::vector<std::vector<Anomaly>> anomaly_lists, RunMetadata meta);

struct OverlapRow {
    std::size_t cutoff = 0;   // requested k
    std::size_t common = 0;   // |top-k(a) ∩ top-k(b)| after clamping
    int percent = 0;          // round(100 * common / k_used)
};

struct OverlapTable {
    std::vector<OverlapRow> rows;
    std::vector<std::string> notes;  // e.g. cutoffs clamped to the shorter list
};

/// Top-k intersection sizes of two rankings for each cutoff. Cutoffs
/// exceeding a list length are clamped to the shorter length with a note.
/// Ids must be unique within each ranking.
OverlapTable overlap_table(const std::vector<std::string>& ranked_a,
                           const std::vector<std::string>& ranked_b,
                           const std::vector<std::size_t>& cutoffs);

struct PrecisionPoint {
    double score_cutoff = 0.0;
    std::optional<double> mean_label;  // empty when no labeled anomaly reaches the cutoff
    std::size_t support = 0;
};

struct PrecisionCurve {
    std::vector<PrecisionPoint> points;
};

/// Locator for a labeled anomaly: (detector, entry_index, occurrence_index).
using AnomalyLocator = std::tuple<std::string, std::size_t, std::size_t>;
using LabelMap = std::map<AnomalyLocator, double>;

/// Mean label over labeled anomalies with score >= cutoff, per cutoff.
/// Unlabeled anomalies are excluded. Throws if a labeled locator does not
/// exist in the report.
PrecisionCurve precision_curve(const Report& report, const LabelMap& labels,
                               const std::vector<double>& cutoffs);

enum class ReportFormat { kJson, kCsv };

/// Deterministic serialization: stable key order, floats with six decimal
/// places, infinite scores rendered as "inf".
std::string serialize_report(const Report& report, ReportFormat format);

/// Parses a JSON report produced by serialize_report.
Report parse_report_json(std::string_view text);

/// Labels CSV with header detector,entry_index,occurrence_index,label and
/// label values in [0,1].
LabelMap parse_labels_csv(std::string_view text);

std::string serialize_overlap(const OverlapTable& table, ReportFormat format);
std::string serialize_precision(const PrecisionCurve& curve, ReportFormat format);

}  // namespace dictlint
