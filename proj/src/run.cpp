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

#include "dictlint/run.hpp"

#include <sys/stat.h>

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dictlint/version.hpp"
#include "dictlint/xml.hpp"

namespace dictlint {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, std::initializer_list<const char*> known,
                         const std::string& where) {
    std::string unknown;
    for (const auto& [key, value] : object.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (key == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            if (!unknown.empty()) unknown += ", ";
            unknown += "\"" + key + "\"";
        }
    }
    if (!unknown.empty()) {
        throw ConfigError("unknown keys in " + where + ": " + unknown);
    }
}

template <typename T>
void read_key(const json& object, const char* key, T& out, const std::string& where) {
    auto it = object.find(key);
    if (it == object.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError("bad value for \"" + std::string(key) + "\" in " + where);
    }
}

void validate_detector_ids(const std::vector<std::string>& ids, bool tied,
                           const std::string& where) {
    for (const std::string& id : ids) {
        bool valid = tied ? is_tied_field_detector(id) : is_single_field_detector(id);
        if (!valid) {
            throw ConfigError("detector \"" + id + "\" is not valid for " + where);
        }
    }
}

void require_positive(double value, const char* key) {
    if (!(value > 0.0)) {
        throw ConfigError(std::string("\"") + key + "\" must be positive");
    }
}

std::string format_utc(std::time_t seconds) {
    std::tm tm{};
    gmtime_r(&seconds, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// SOURCE_DATE_EPOCH when set, else the input file's mtime: stable across
// identical runs, so reports stay byte-identical.
std::string run_timestamp(const std::string& input_path) {
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        return format_utc(static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10)));
    }
    struct stat st{};
    if (stat(input_path.c_str(), &st) == 0) {
        return format_utc(st.st_mtime);
    }
    return format_utc(0);
}

std::string canonical_config(const RunConfig& c) {
    std::ostringstream out;
    out << "input=" << c.input_path << ";entry_tag=" << c.entry_tag
        << ";deep_text=" << c.deep_text << ";norm=" << c.normalization.lowercase
        << c.normalization.unicode_nfc << c.normalization.collapse_whitespace
        << ";idf=" << c.detectors.idf_threshold << ";len_z=" << c.detectors.length_z_threshold
        << ";word=" << c.detectors.word_lm_order << "," << c.detectors.word_entropy_z_threshold
        << ";char=" << c.detectors.char_lm_order << "," << c.detectors.char_entropy_z_threshold
        << ";ratio_z=" << c.detectors.ratio_z_threshold << ";partition=";
    for (long cut : c.detectors.ratio_partition) out << cut << ",";
    out << ";translit_z=" << c.detectors.translit_z_threshold
        << ";lower_tied=" << c.detectors.lowercase_tied << ";delta=" << c.detectors.lm_delta
        << ";tl=" << c.detectors.translit.max_source << "," << c.detectors.translit.max_target
        << "," << c.detectors.translit.em_iterations << "," << c.detectors.translit.lm_order
        << "," << c.detectors.translit.lm_delta << "," << c.detectors.translit.beam_width << ","
        << c.detectors.translit.nbest << ";fields=";
    for (const SingleFieldSpec& spec : c.single_fields) {
        out << spec.tag << "(";
        for (const std::string& d : spec.detectors) out << d << ",";
        out << ");";
    }
    out << "tied=";
    for (const TiedFieldSpec& spec : c.tied_fields) {
        out << spec.first_tag << "+" << spec.second_tag << "(";
        for (const std::string& d : spec.detectors) out << d << ",";
        out << ");";
    }
    out << "format=" << (c.output_format == ReportFormat::kJson ? "json" : "csv");
    return out.str();
}

}  // namespace

std::string config_digest(const RunConfig& config) {
    std::string canonical = canonical_config(config);
    std::uint64_t h = 1469598103934665603ull;
    for (char c : canonical) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_config_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    reject_unknown_keys(doc,
                        {"input", "entry_tag", "deep_text", "normalization", "detectors",
                         "single_fields", "tied_fields", "output", "format"},
                        "config");

    RunConfig config;
    read_key(doc, "input", config.input_path, "config");
    read_key(doc, "entry_tag", config.entry_tag, "config");
    read_key(doc, "deep_text", config.deep_text, "config");
    read_key(doc, "output", config.output_path, "config");

    if (doc.contains("format")) {
        std::string format = doc["format"].get<std::string>();
        if (format == "json") {
            config.output_format = ReportFormat::kJson;
        } else if (format == "csv") {
            config.output_format = ReportFormat::kCsv;
        } else {
            throw ConfigError("\"format\" must be \"json\" or \"csv\"");
        }
    }

    if (doc.contains("normalization")) {
        const json& norm = doc["normalization"];
        reject_unknown_keys(norm, {"lowercase", "unicode_nfc", "collapse_whitespace"},
                            "normalization");
        read_key(norm, "lowercase", config.normalization.lowercase, "normalization");
        read_key(norm, "unicode_nfc", config.normalization.unicode_nfc, "normalization");
        read_key(norm, "collapse_whitespace", config.normalization.collapse_whitespace,
                 "normalization");
    }

    if (doc.contains("detectors")) {
        const json& det = doc["detectors"];
        reject_unknown_keys(det,
                            {"idf_threshold", "length_z_threshold", "word_lm_order",
                             "word_entropy_z_threshold", "char_lm_order",
                             "char_entropy_z_threshold", "ratio_z_threshold", "ratio_partition",
                             "translit_z_threshold", "lowercase_tied", "lm_delta", "translit"},
                            "detectors");
        DetectorConfig& d = config.detectors;
        read_key(det, "idf_threshold", d.idf_threshold, "detectors");
        read_key(det, "length_z_threshold", d.length_z_threshold, "detectors");
        read_key(det, "word_lm_order", d.word_lm_order, "detectors");
        read_key(det, "word_entropy_z_threshold", d.word_entropy_z_threshold, "detectors");
        read_key(det, "char_lm_order", d.char_lm_order, "detectors");
        read_key(det, "char_entropy_z_threshold", d.char_entropy_z_threshold, "detectors");
        read_key(det, "ratio_z_threshold", d.ratio_z_threshold, "detectors");
        read_key(det, "ratio_partition", d.ratio_partition, "detectors");
        read_key(det, "translit_z_threshold", d.translit_z_threshold, "detectors");
        read_key(det, "lowercase_tied", d.lowercase_tied, "detectors");
        read_key(det, "lm_delta", d.lm_delta, "detectors");
        if (det.contains("translit")) {
            const json& tl = det["translit"];
            reject_unknown_keys(tl,
                                {"max_source", "max_target", "em_iterations", "lm_order",
                                 "lm_delta", "beam_width", "nbest"},
                                "translit");
            read_key(tl, "max_source", d.translit.max_source, "translit");
            read_key(tl, "max_target", d.translit.max_target, "translit");
            read_key(tl, "em_iterations", d.translit.em_iterations, "translit");
            read_key(tl, "lm_order", d.translit.lm_order, "translit");
            read_key(tl, "lm_delta", d.translit.lm_delta, "translit");
            read_key(tl, "beam_width", d.translit.beam_width, "translit");
            read_key(tl, "nbest", d.translit.nbest, "translit");
        }
    }

    if (doc.contains("single_fields")) {
        for (const json& item : doc["single_fields"]) {
            reject_unknown_keys(item, {"tag", "detectors"}, "single_fields");
            SingleFieldSpec spec;
            read_key(item, "tag", spec.tag, "single_fields");
            read_key(item, "detectors", spec.detectors, "single_fields");
            if (spec.tag.empty()) throw ConfigError("single_fields: missing \"tag\"");
            if (spec.detectors.empty()) {
                spec.detectors.assign(std::begin(kSingleFieldDetectors),
                                      std::end(kSingleFieldDetectors));
            }
            validate_detector_ids(spec.detectors, false,
                                  "single-field spec \"" + spec.tag + "\"");
            config.single_fields.push_back(std::move(spec));
        }
    }

    if (doc.contains("tied_fields")) {
        for (const json& item : doc["tied_fields"]) {
            reject_unknown_keys(item, {"first", "second", "detectors"}, "tied_fields");
            TiedFieldSpec spec;
            read_key(item, "first", spec.first_tag, "tied_fields");
            read_key(item, "second", spec.second_tag, "tied_fields");
            read_key(item, "detectors", spec.detectors, "tied_fields");
            if (spec.first_tag.empty() || spec.second_tag.empty()) {
                throw ConfigError("tied_fields: missing \"first\" or \"second\"");
            }
            if (spec.detectors.empty()) {
                spec.detectors.assign(std::begin(kTiedFieldDetectors),
                                      std::end(kTiedFieldDetectors));
            }
            validate_detector_ids(spec.detectors, true,
                                  "tied-field spec \"" + spec.first_tag + "+" + spec.second_tag +
                                      "\"");
            config.tied_fields.push_back(std::move(spec));
        }
    }

    if (config.entry_tag.empty()) throw ConfigError("missing \"entry_tag\"");
    if (config.single_fields.empty() && config.tied_fields.empty()) {
        throw ConfigError("config needs at least one single_fields or tied_fields spec");
    }

    const DetectorConfig& d = config.detectors;
    require_positive(d.idf_threshold, "idf_threshold");
    require_positive(d.length_z_threshold, "length_z_threshold");
    require_positive(d.word_entropy_z_threshold, "word_entropy_z_threshold");
    require_positive(d.char_entropy_z_threshold, "char_entropy_z_threshold");
    require_positive(d.ratio_z_threshold, "ratio_z_threshold");
    require_positive(d.translit_z_threshold, "translit_z_threshold");
    require_positive(d.lm_delta, "lm_delta");
    require_positive(d.translit.lm_delta, "translit.lm_delta");
    if (d.word_lm_order < 1 || d.char_lm_order < 1 || d.translit.lm_order < 1) {
        throw ConfigError("language model orders must be >= 1");
    }
    if (d.translit.max_source < 1 || d.translit.max_target < 1) {
        throw ConfigError("translit segment size limits must be >= 1");
    }
    if (d.translit.em_iterations < 0) throw ConfigError("translit.em_iterations must be >= 0");
    if (d.translit.beam_width < 1 || d.translit.nbest < 1) {
        throw ConfigError("translit.beam_width and translit.nbest must be >= 1");
    }
    for (std::size_t i = 0; i < d.ratio_partition.size(); ++i) {
        if (d.ratio_partition[i] < 1 ||
            (i > 0 && d.ratio_partition[i] <= d.ratio_partition[i - 1])) {
            throw ConfigError("ratio_partition cuts must be positive and ascending");
        }
    }
    return config;
}

RunConfig load_config(const std::string& path) {
    return parse_config_json(read_file(path));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

RunResult run(const RunConfig& config) {
    RunResult result;
    if (config.input_path.empty()) {
        result.exit_code = kExitConfigError;
        result.errors.push_back("no input path (set \"input\" in the config or pass --input)");
        return result;
    }

    std::string bytes;
    try {
        bytes = read_file(config.input_path);
    } catch (const std::exception& e) {
        result.exit_code = kExitInputError;
        result.errors.push_back(e.what());
        return result;
    }

    Corpus corpus;
    try {
        corpus = parse_dictionary(bytes, config.entry_tag, ParseOptions{config.deep_text},
                                  config.input_path);
    } catch (const xml::ParseError& e) {
        result.exit_code = kExitInputError;
        result.errors.push_back(std::string("parse error: ") + e.what());
        return result;
    }
    result.warnings = corpus.warnings;

    std::vector<std::vector<Anomaly>> lists;
    for (const SingleFieldSpec& spec : config.single_fields) {
        std::vector<FieldInstance> instances =
            extract_single_field(corpus, spec.tag, config.normalization);
        if (instances.empty()) {
            result.warnings.push_back("field \"" + spec.tag + "\": no instances");
            continue;
        }
        for (const std::string& id : spec.detectors) {
            if (id == "uncommon_chars") {
                lists.push_back(detect_uncommon_chars(instances, config.detectors));
            } else if (id == "text_length") {
                lists.push_back(detect_text_length(instances, config.detectors));
            } else if (id == "word_sequence") {
                lists.push_back(detect_word_sequence(instances, config.detectors));
            } else if (id == "char_sequence") {
                lists.push_back(detect_char_sequence(instances, config.detectors));
            }
        }
    }
    for (const TiedFieldSpec& spec : config.tied_fields) {
        PairSkew skew;
        std::vector<TiedPair> pairs = extract_tied_pairs(corpus, spec.first_tag, spec.second_tag,
                                                         config.normalization, &skew);
        if (skew.values_skipped > 0) {
            result.warnings.push_back(
                "tied fields " + spec.first_tag + "+" + spec.second_tag + ": skipped " +
                std::to_string(skew.values_skipped) + " unmatched value(s) in " +
                std::to_string(skew.entries_with_skew) + " entr(ies)");
        }
        if (pairs.empty()) {
            result.warnings.push_back("tied fields " + spec.first_tag + "+" + spec.second_tag +
                                      ": no pairs");
            continue;
        }
        for (const std::string& id : spec.detectors) {
            if (id == "length_ratio") {
                lists.push_back(detect_length_ratio(pairs, config.detectors));
            } else if (id == "transliteration") {
                try {
                    lists.push_back(detect_transliteration(pairs, config.detectors));
                } catch (const std::exception& e) {
                    // A degenerate corpus aborts this detector only.
                    result.warnings.push_back("transliteration detector failed for " +
                                              spec.first_tag + "+" + spec.second_tag + ": " +
                                              e.what());
                }
            }
        }
    }

    RunMetadata meta;
    meta.input = config.input_path;
    meta.config_digest = config_digest(config);
    meta.version = std::string(kVersion);
    meta.timestamp = run_timestamp(config.input_path);
    result.report = assemble_report(std::move(lists), std::move(meta));
    result.serialized = serialize_report(result.report, config.output_format);

    if (!config.output_path.empty()) {
        try {
            write_file(config.output_path, result.serialized);
        } catch (const std::exception& e) {
            result.exit_code = kExitInputError;
            result.errors.push_back(e.what());
        }
    }
    return result;
}

}  // namespace dictlint
