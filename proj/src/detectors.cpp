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

#include "dictlint/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dictlint/ngram.hpp"
#include "dictlint/stats.hpp"
#include "dictlint/unicode.hpp"

namespace dictlint {

namespace {

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::string zscore_note(double value, const char* what, const SampleStats& stats, double z,
                        bool two_sided) {
    std::string out = std::string(what) + " " + fmt(value) + " vs mean " + fmt(stats.mean) +
                      ", stddev " + fmt(stats.stddev) + " (";
    out += two_sided ? "|z| = " + fmt(std::fabs(z)) : "z = " + fmt(z);
    out += ")";
    return out;
}

// Shared by the word and character sequence detectors.
std::vector<Anomaly> detect_entropy(const std::vector<FieldInstance>& instances, TokenMode mode,
                                    int order, double delta, double threshold,
                                    const char* detector_id, const char* what) {
    if (instances.empty()) return {};
    std::vector<std::vector<std::string>> sequences;
    sequences.reserve(instances.size());
    bool any = false;
    for (const FieldInstance& inst : instances) {
        sequences.push_back(tokenize(inst.text_value, mode));
        if (!sequences.back().empty()) any = true;
    }
    if (!any) return {};  // nothing to model in an all-empty field

    NGramLanguageModel model = NGramLanguageModel::train(sequences, order, delta);
    std::vector<double> entropies;
    entropies.reserve(sequences.size());
    for (const auto& seq : sequences) entropies.push_back(model.sequence_entropy(seq));

    SampleStats stats = sample_stats(entropies);
    std::vector<double> z = zscores(entropies);
    std::vector<Anomaly> out;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (z[i] <= threshold) continue;  // one-sided: high entropy only
        Anomaly a;
        a.detector_id = detector_id;
        a.field_names = {instances[i].tag_name};
        a.entry_index = instances[i].entry_index;
        a.occurrence_index = instances[i].occurrence_index;
        a.observed_values = {instances[i].text_value};
        a.score = z[i];
        a.threshold = threshold;
        a.explanation = zscore_note(entropies[i], what, stats, z[i], false);
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

bool is_single_field_detector(std::string_view id) {
    return std::find(std::begin(kSingleFieldDetectors), std::end(kSingleFieldDetectors), id) !=
           std::end(kSingleFieldDetectors);
}

bool is_tied_field_detector(std::string_view id) {
    return std::find(std::begin(kTiedFieldDetectors), std::end(kTiedFieldDetectors), id) !=
           std::end(kTiedFieldDetectors);
}

std::vector<Anomaly> detect_uncommon_chars(const std::vector<FieldInstance>& instances,
                                           const DetectorConfig& cfg) {
    if (instances.empty()) return {};
    std::vector<std::string> docs;
    docs.reserve(instances.size());
    for (const FieldInstance& inst : instances) docs.push_back(inst.text_value);
    IdfTable table = build_idf(docs);

    std::vector<Anomaly> out;
    for (const FieldInstance& inst : instances) {
        std::map<char32_t, double> offenders;
        for (char32_t c : decode_utf8(inst.text_value)) {
            double idf = table.idf(c);
            if (idf > cfg.idf_threshold) offenders.emplace(c, idf);
        }
        if (offenders.empty()) continue;
        double max_idf = 0.0;
        std::string list;
        for (const auto& [c, idf] : offenders) {
            max_idf = std::max(max_idf, idf);
            if (!list.empty()) list += ", ";
            list += "'" + encode_utf8(std::u32string_view(&c, 1)) + "' (idf " + fmt(idf) + ")";
        }
        Anomaly a;
        a.detector_id = "uncommon_chars";
        a.field_names = {inst.tag_name};
        a.entry_index = inst.entry_index;
        a.occurrence_index = inst.occurrence_index;
        a.observed_values = {inst.text_value};
        a.score = max_idf;
        a.threshold = cfg.idf_threshold;
        a.explanation = "uncommon characters: " + list;
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Anomaly> detect_text_length(const std::vector<FieldInstance>& instances,
                                        const DetectorConfig& cfg) {
    if (instances.empty()) return {};
    std::vector<double> lengths;
    lengths.reserve(instances.size());
    for (const FieldInstance& inst : instances) {
        lengths.push_back(static_cast<double>(scalar_length(inst.text_value)));
    }
    SampleStats stats = sample_stats(lengths);
    std::vector<double> z = zscores(lengths);

    std::vector<Anomaly> out;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (std::fabs(z[i]) <= cfg.length_z_threshold) continue;
        Anomaly a;
        a.detector_id = "text_length";
        a.field_names = {instances[i].tag_name};
        a.entry_index = instances[i].entry_index;
        a.occurrence_index = instances[i].occurrence_index;
        a.observed_values = {instances[i].text_value};
        a.score = std::fabs(z[i]);
        a.threshold = cfg.length_z_threshold;
        a.explanation = zscore_note(lengths[i], "length", stats, z[i], true);
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Anomaly> detect_word_sequence(const std::vector<FieldInstance>& instances,
                                          const DetectorConfig& cfg) {
    return detect_entropy(instances, TokenMode::kWord, cfg.word_lm_order, cfg.lm_delta,
                          cfg.word_entropy_z_threshold, "word_sequence",
                          "word entropy (bits/token)");
}

std::vector<Anomaly> detect_char_sequence(const std::vector<FieldInstance>& instances,
                                          const DetectorConfig& cfg) {
    return detect_entropy(instances, TokenMode::kChar, cfg.char_lm_order, cfg.lm_delta,
                          cfg.char_entropy_z_threshold, "char_sequence",
                          "character entropy (bits/token)");
}

std::vector<Anomaly> detect_length_ratio(const std::vector<TiedPair>& pairs,
                                         const DetectorConfig& cfg) {
    if (pairs.empty()) return {};

    auto partition_of = [&cfg](std::size_t first_len) {
        std::size_t bin = 0;
        while (bin < cfg.ratio_partition.size() &&
               static_cast<long>(first_len) > cfg.ratio_partition[bin]) {
            ++bin;
        }
        return bin;
    };

    std::vector<Anomaly> out;
    std::size_t bin_count = cfg.ratio_partition.size() + 1;
    std::vector<std::vector<std::size_t>> members(bin_count);
    std::vector<std::vector<double>> ratios(bin_count);
    std::vector<std::size_t> first_lengths(pairs.size());

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const TiedPair& pair = pairs[i];
        std::size_t len1 = scalar_length(pair.first.text_value);
        std::size_t len2 = scalar_length(pair.second.text_value);
        first_lengths[i] = len1;
        if (len2 == 0) {
            Anomaly a;
            a.detector_id = "length_ratio";
            a.field_names = {pair.first.tag_name, pair.second.tag_name};
            a.entry_index = pair.first.entry_index;
            a.occurrence_index = pair.first.occurrence_index;
            a.observed_values = {pair.first.text_value, pair.second.text_value};
            a.score = std::numeric_limits<double>::infinity();
            a.threshold = cfg.ratio_z_threshold;
            a.explanation = "empty second field";
            out.push_back(std::move(a));
            continue;
        }
        std::size_t bin = partition_of(len1);
        members[bin].push_back(i);
        ratios[bin].push_back(static_cast<double>(len1) / static_cast<double>(len2));
    }

    for (std::size_t bin = 0; bin < bin_count; ++bin) {
        if (members[bin].empty()) continue;
        SampleStats stats = sample_stats(ratios[bin]);
        std::vector<double> z = zscores(ratios[bin]);
        for (std::size_t k = 0; k < members[bin].size(); ++k) {
            if (std::fabs(z[k]) <= cfg.ratio_z_threshold) continue;
            const TiedPair& pair = pairs[members[bin][k]];
            Anomaly a;
            a.detector_id = "length_ratio";
            a.field_names = {pair.first.tag_name, pair.second.tag_name};
            a.entry_index = pair.first.entry_index;
            a.occurrence_index = pair.first.occurrence_index;
            a.observed_values = {pair.first.text_value, pair.second.text_value};
            a.score = std::fabs(z[k]);
            a.threshold = cfg.ratio_z_threshold;
            a.explanation = zscore_note(ratios[bin][k], "length ratio", stats, z[k], true);
            if (!cfg.ratio_partition.empty()) {
                a.explanation += "; partition " + std::to_string(bin) + " (first-field length " +
                                 std::to_string(first_lengths[members[bin][k]]) + ")";
            }
            out.push_back(std::move(a));
        }
    }

    // Keep output in pair order regardless of partitioning.
    std::sort(out.begin(), out.end(), [](const Anomaly& a, const Anomaly& b) {
        if (a.entry_index != b.entry_index) return a.entry_index < b.entry_index;
        return a.occurrence_index < b.occurrence_index;
    });
    return out;
}

std::vector<Anomaly> detect_transliteration(const std::vector<TiedPair>& pairs,
                                            const DetectorConfig& cfg) {
    if (pairs.empty()) return {};

    std::vector<std::pair<std::string, std::string>> texts;
    texts.reserve(pairs.size());
    for (const TiedPair& pair : pairs) {
        std::string first = pair.first.text_value;
        std::string second = pair.second.text_value;
        if (cfg.lowercase_tied) {
            first = encode_utf8(to_lower(decode_utf8(first)));
            second = encode_utf8(to_lower(decode_utf8(second)));
        }
        texts.emplace_back(std::move(first), std::move(second));
    }

    TransliterationModel model = TransliterationModel::train(texts, cfg.translit);

    std::vector<double> expected;
    std::vector<std::string> best_candidates;
    expected.reserve(pairs.size());
    best_candidates.reserve(pairs.size());
    for (const auto& [first, second] : texts) {
        std::vector<Candidate> candidates = model.nbest(first, cfg.translit.nbest);
        expected.push_back(expected_ned(candidates, second));
        best_candidates.push_back(candidates.front().text);
    }

    SampleStats stats = sample_stats(expected);
    std::vector<double> z = zscores(expected);
    std::vector<Anomaly> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (z[i] <= cfg.translit_z_threshold) continue;  // one-sided
        Anomaly a;
        a.detector_id = "transliteration";
        a.field_names = {pairs[i].first.tag_name, pairs[i].second.tag_name};
        a.entry_index = pairs[i].first.entry_index;
        a.occurrence_index = pairs[i].first.occurrence_index;
        a.observed_values = {pairs[i].first.text_value, pairs[i].second.text_value};
        a.score = z[i];
        a.threshold = cfg.translit_z_threshold;
        a.explanation = zscore_note(expected[i], "expected NED", stats, z[i], false) +
                        "; best candidate \"" + best_candidates[i] + "\"";
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace dictlint
