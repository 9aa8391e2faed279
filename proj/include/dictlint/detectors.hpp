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

#include <string>
#include <string_view>
#include <vector>

#include "dictlint/corpus.hpp"
#include "dictlint/translit.hpp"

namespace dictlint {

/// A detector finding. score > threshold always holds; score may be +inf
/// for unconditional flags (empty second field in the ratio detector).
struct Anomaly {
    std::string detector_id;
    std::vector<std::string> field_names;  // 1 entry for single-field, 2 for tied
    std::size_t entry_index = 0;
    std::size_t occurrence_index = 0;
    std::vector<std::string> observed_values;
    double score = 0.0;
    double threshold = 0.0;
    std::string explanation;
};

struct DetectorConfig {
    double idf_threshold = 4.0;
    double length_z_threshold = 4.0;
    int word_lm_order = 4;
    double word_entropy_z_threshold = 5.0;
    int char_lm_order = 4;
    double char_entropy_z_threshold = 5.0;
    double ratio_z_threshold = 2.0;
    std::vector<long> ratio_partition;  // ascending first-field length cuts; empty = one partition
    double translit_z_threshold = 2.0;
    bool lowercase_tied = false;
    double lm_delta = 0.01;
    TranslitConfig translit;
};

inline constexpr std::string_view kSingleFieldDetectors[] = {
    "uncommon_chars", "text_length", "word_sequence", "char_sequence"};
inline constexpr std::string_view kTiedFieldDetectors[] = {"length_ratio", "transliteration"};

bool is_single_field_detector(std::string_view id);
bool is_tied_field_detector(std::string_view id);

/// Flags texts containing a character whose idf over the field's documents
/// exceeds the threshold; score is the highest offending idf.
std::vector<Anomaly> detect_uncommon_chars(const std::vector<FieldInstance>& instances,
                                           const DetectorConfig& cfg);

/// Flags texts whose length in scalars has |z| above the threshold.
std::vector<Anomaly> detect_text_length(const std::vector<FieldInstance>& instances,
                                        const DetectorConfig& cfg);

/// Flags texts whose word-LM entropy z-score is above the threshold
/// (one-sided: only unusually unlikely texts).
std::vector<Anomaly> detect_word_sequence(const std::vector<FieldInstance>& instances,
                                          const DetectorConfig& cfg);

/// As detect_word_sequence with a character-level model.
std::vector<Anomaly> detect_char_sequence(const std::vector<FieldInstance>& instances,
                                          const DetectorConfig& cfg);

/// Flags pairs whose first/second length ratio has |z| above the threshold,
/// optionally within first-field length partitions. Pairs with an empty
/// second field are flagged unconditionally with an infinite score.
std::vector<Anomaly> detect_length_ratio(const std::vector<TiedPair>& pairs,
                                         const DetectorConfig& cfg);

/// Trains a transliteration model on the pairs and flags those whose
/// score-weighted mean NED between the generated candidates and the
/// observed second field has a z-score above the threshold.
std::vector<Anomaly> detect_transliteration(const std::vector<TiedPair>& pairs,
                                            const DetectorConfig& cfg);

}  // namespace dictlint
