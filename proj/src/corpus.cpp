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

#include "dictlint/corpus.hpp"

#include <algorithm>

#include "dictlint/unicode.hpp"
#include "dictlint/xml.hpp"

namespace dictlint {

namespace {

void collect_fields(const xml::Element& elem, bool deep_text,
                    std::vector<std::pair<std::string, std::string>>& out) {
    for (const xml::Node& child : elem.children) {
        if (!std::holds_alternative<std::unique_ptr<xml::Element>>(child)) continue;
        const xml::Element& sub = *std::get<std::unique_ptr<xml::Element>>(child);
        out.emplace_back(sub.tag, deep_text ? sub.deep_text() : sub.own_text());
        collect_fields(sub, deep_text, out);
    }
}

void collect_entries(const xml::Element& elem, const std::string& path,
                     const std::string& entry_tag, bool deep_text, Corpus& corpus) {
    std::string elem_path = path.empty() ? elem.tag : path + "/" + elem.tag;
    if (elem.tag == entry_tag) {
        Entry entry;
        entry.entry_index = corpus.entries.size();
        entry.element_path = elem_path;
        collect_fields(elem, deep_text, entry.fields);
        corpus.entries.push_back(std::move(entry));
    }
    for (const xml::Node& child : elem.children) {
        if (std::holds_alternative<std::unique_ptr<xml::Element>>(child)) {
            collect_entries(*std::get<std::unique_ptr<xml::Element>>(child), elem_path,
                            entry_tag, deep_text, corpus);
        }
    }
}

}  // namespace

Corpus parse_dictionary(std::string_view xml_bytes, const std::string& entry_tag,
                        const ParseOptions& opts, std::string source_path) {
    xml::Document doc = xml::parse(xml_bytes);
    Corpus corpus;
    corpus.source_path = std::move(source_path);
    collect_entries(*doc.root, "", entry_tag, opts.deep_text, corpus);
    if (corpus.entries.empty()) {
        corpus.warnings.push_back("no <" + entry_tag + "> elements found");
    }
    return corpus;
}

std::string normalize_text(std::string_view text, const NormalizationOptions& opts) {
    std::u32string scalars = decode_utf8(text);
    if (opts.unicode_nfc) scalars = nfc(scalars);
    if (opts.lowercase) scalars = to_lower(scalars);
    if (opts.collapse_whitespace) scalars = collapse_whitespace(scalars);
    return encode_utf8(scalars);
}

std::vector<FieldInstance> extract_single_field(const Corpus& corpus, const std::string& tag_name,
                                                const NormalizationOptions& opts) {
    std::vector<FieldInstance> out;
    for (const Entry& entry : corpus.entries) {
        std::size_t occurrence = 0;
        for (const auto& [tag, text] : entry.fields) {
            if (tag != tag_name) continue;
            out.push_back(FieldInstance{tag_name, normalize_text(text, opts),
                                        entry.entry_index, occurrence});
            ++occurrence;
        }
    }
    return out;
}

std::vector<TiedPair> extract_tied_pairs(const Corpus& corpus, const std::string& first_tag,
                                         const std::string& second_tag,
                                         const NormalizationOptions& opts, PairSkew* skew) {
    std::vector<TiedPair> out;
    PairSkew tally;
    for (const Entry& entry : corpus.entries) {
        std::vector<std::string> firsts;
        std::vector<std::string> seconds;
        for (const auto& [tag, text] : entry.fields) {
            if (tag == first_tag) firsts.push_back(normalize_text(text, opts));
            if (tag == second_tag) seconds.push_back(normalize_text(text, opts));
        }
        std::size_t matched = std::min(firsts.size(), seconds.size());
        std::size_t surplus = std::max(firsts.size(), seconds.size()) - matched;
        if (surplus > 0) {
            ++tally.entries_with_skew;
            tally.values_skipped += surplus;
        }
        for (std::size_t k = 0; k < matched; ++k) {
            TiedPair pair;
            pair.first = FieldInstance{first_tag, firsts[k], entry.entry_index, k};
            pair.second = FieldInstance{second_tag, seconds[k], entry.entry_index, k};
            pair.pair_id = "e" + std::to_string(entry.entry_index) + ":" + first_tag + "+" +
                           second_tag + ":" + std::to_string(k);
            out.push_back(std::move(pair));
        }
    }
    if (skew != nullptr) *skew = tally;
    return out;
}

}  // namespace dictlint
