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

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dictlint/report.hpp"
#include "dictlint/run.hpp"
#include "dictlint/version.hpp"

namespace {

using namespace dictlint;

std::vector<std::string> ranked_ids(const Report& report, const std::string& detector) {
    std::vector<std::string> ids;
    std::set<std::string> seen;
    for (const Anomaly& a : report.anomalies) {
        if (!detector.empty() && a.detector_id != detector) continue;
        std::string id = "e" + std::to_string(a.entry_index) + ":o" +
                         std::to_string(a.occurrence_index);
        for (const std::string& field : a.field_names) id += ":" + field;
        if (seen.insert(id).second) ids.push_back(id);
    }
    return ids;
}

ReportFormat parse_format(const std::string& format) {
    if (format == "csv") return ReportFormat::kCsv;
    return ReportFormat::kJson;
}

void emit(const std::string& bytes, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << bytes;
    } else {
        write_file(output_path, bytes);
    }
}

int run_scan(const std::string& config_path, const std::string& input_override,
             const std::string& output_override, const std::string& format_override, bool quiet) {
    RunConfig config;
    try {
        config = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "dictlint: " << e.what() << "\n";
        return kExitConfigError;
    }
    if (!input_override.empty()) config.input_path = input_override;
    if (!output_override.empty()) config.output_path = output_override;
    if (!format_override.empty()) config.output_format = parse_format(format_override);

    RunResult result = run(config);
    if (!quiet) {
        for (const std::string& warning : result.warnings) {
            std::cerr << "warning: " << warning << "\n";
        }
    }
    for (const std::string& error : result.errors) {
        std::cerr << "dictlint: " << error << "\n";
    }
    if (result.exit_code == kExitOk && config.output_path.empty()) {
        std::cout << result.serialized;
    }
    return result.exit_code;
}

int run_overlap(const std::string& path_a, const std::string& path_b,
                const std::string& detector_a, const std::string& detector_b,
                std::vector<std::size_t> cutoffs, const std::string& format,
                const std::string& output_path, bool quiet) {
    Report a;
    Report b;
    try {
        a = parse_report_json(read_file(path_a));
        b = parse_report_json(read_file(path_b));
    } catch (const std::exception& e) {
        std::cerr << "dictlint: " << e.what() << "\n";
        return kExitInputError;
    }
    if (cutoffs.empty()) {
        cutoffs = {10, 25, 50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000, 1500, 2000};
    }
    try {
        OverlapTable table = overlap_table(ranked_ids(a, detector_a), ranked_ids(b, detector_b),
                                           cutoffs);
        if (!quiet) {
            for (const std::string& note : table.notes) std::cerr << "note: " << note << "\n";
        }
        emit(serialize_overlap(table, parse_format(format)), output_path);
    } catch (const std::exception& e) {
        std::cerr << "dictlint: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}

int run_eval(const std::string& report_path, const std::string& labels_path,
             std::vector<double> cutoffs, const std::string& format,
             const std::string& output_path) {
    Report report;
    LabelMap labels;
    try {
        report = parse_report_json(read_file(report_path));
        labels = parse_labels_csv(read_file(labels_path));
    } catch (const std::exception& e) {
        std::cerr << "dictlint: " << e.what() << "\n";
        return kExitInputError;
    }
    if (cutoffs.empty()) {
        double max_score = 0.0;
        for (const Anomaly& a : report.anomalies) {
            if (!std::isinf(a.score)) max_score = std::max(max_score, a.score);
        }
        for (double c = 0.0; c <= max_score + 0.25; c += 0.5) cutoffs.push_back(c);
    }
    try {
        PrecisionCurve curve = precision_curve(report, labels, cutoffs);
        emit(serialize_precision(curve, parse_format(format)), output_path);
    } catch (const std::exception& e) {
        std::cerr << "dictlint: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statistical anomaly detection for XML electronic dictionaries"};
    app.set_version_flag("--version", std::string(dictlint::kVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string input_path;
    std::string output_path;
    std::string format;
    bool quiet = false;

    CLI::App* scan = app.add_subcommand("scan", "run detectors over a dictionary");
    scan->add_option("--config", config_path, "run configuration (JSON)")->required();
    scan->add_option("--input", input_path, "XML dictionary (overrides config)");
    scan->add_option("--output", output_path, "report path (default: config, else stdout)");
    scan->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    scan->add_flag("--quiet", quiet, "suppress warnings");

    std::string path_a;
    std::string path_b;
    std::string detector_a;
    std::string detector_b;
    std::vector<std::size_t> overlap_cutoffs;
    CLI::App* overlap = app.add_subcommand("overlap", "top-k overlap of two ranked reports");
    overlap->add_option("--a", path_a, "first report (JSON)")->required();
    overlap->add_option("--b", path_b, "second report (JSON)")->required();
    overlap->add_option("--detector-a", detector_a, "restrict first ranking to one detector");
    overlap->add_option("--detector-b", detector_b, "restrict second ranking to one detector");
    overlap->add_option("--cutoffs", overlap_cutoffs, "top-k cutoffs")->delimiter(',');
    overlap->add_option("--output", output_path, "output path (default stdout)");
    overlap->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    overlap->add_flag("--quiet", quiet, "suppress notes");

    std::string report_path;
    std::string labels_path;
    std::vector<double> eval_cutoffs;
    CLI::App* eval = app.add_subcommand("eval", "label-based precision at score cutoffs");
    eval->add_option("--report", report_path, "report to evaluate (JSON)")->required();
    eval->add_option("--labels", labels_path,
                     "CSV: detector,entry_index,occurrence_index,label")
        ->required();
    eval->add_option("--cutoffs", eval_cutoffs, "score cutoffs")->delimiter(',');
    eval->add_option("--output", output_path, "output path (default stdout)");
    eval->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? dictlint::kExitOk : dictlint::kExitConfigError;
    }

    if (scan->parsed()) {
        return run_scan(config_path, input_path, output_path, format, quiet);
    }
    if (overlap->parsed()) {
        return run_overlap(path_a, path_b, detector_a, detector_b, overlap_cutoffs, format,
                           output_path, quiet);
    }
    return run_eval(report_path, labels_path, eval_cutoffs, format, output_path);
}
