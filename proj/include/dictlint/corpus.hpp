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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dictlint {

struct NormalizationOptions {
    bool lowercase = false;
    bool unicode_nfc = true;
    bool collapse_whitespace = true;
};

/// One lexical entry: every descendant element's (tag, text), in document
/// order, with text entity-resolved but not yet normalized.
struct Entry {
    std::size_t entry_index = 0;
    std::string element_path;  // slash-joined tag path from the root
    std::vector<std::pair<std::string, std::string>> fields;
};

struct Corpus {
    std::vector<Entry> entries;
    std::string source_path;
    std::vector<std::string> warnings;

    std::size_t entry_count() const { return entries.size(); }
};

/// One extracted text value. (tag_name, entry_index, occurrence_index) is
/// unique within a corpus.
struct FieldInstance {
    std::string tag_name;
    std::string text_value;
    std::size_t entry_index = 0;
    std::size_t occurrence_index = 0;
};

/// Positionally matched pair of field values from one entry.
struct TiedPair {
    FieldInstance first;
    FieldInstance second;
    std::string pair_id;
};

struct ParseOptions {
    /// When set, a field's text is the concatenation of all descendant text
    /// instead of the element's own text nodes only.
    bool deep_text = false;
};

/// Parses an XML dictionary and collects one Entry per element whose tag
/// equals entry_tag, in document order. Throws xml::ParseError on
/// malformed input; an absent entry tag yields an empty corpus with a
/// warning.
Corpus parse_dictionary(std::string_view xml_bytes, const std::string& entry_tag,
                        const ParseOptions& opts = {}, std::string source_path = {});

/// NFC, lowercase, and whitespace collapsing per opts, in that order.
std::string normalize_text(std::string_view text, const NormalizationOptions& opts);

/// Every occurrence of tag_name across all entries, normalized, in
/// document order.
std::vector<FieldInstance> extract_single_field(const Corpus& corpus, const std::string& tag_name,
                                                const NormalizationOptions& opts);

struct PairSkew {
    std::size_t entries_with_skew = 0;
    std::size_t values_skipped = 0;
};

/// Pairs first_tag and second_tag values positionally (k-th with k-th)
/// within each entry; surplus values are skipped and tallied into *skew.
std::vector<TiedPair> extract_tied_pairs(const Corpus& corpus, const std::string& first_tag,
                                         const std::string& second_tag,
                                         const NormalizationOptions& opts,
                                         PairSkew* skew = nullptr);

}  // namespace dictlint
