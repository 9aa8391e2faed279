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

#include "dictlint/stats.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "dictlint/unicode.hpp"

namespace dictlint {

SampleStats sample_stats(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("sample_stats: empty sample");
    double sum = 0.0;
    for (double v : values) sum += v;
    double mean = sum / static_cast<double>(values.size());
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    double variance = sq / static_cast<double>(values.size());
    return SampleStats{mean, std::sqrt(variance), values.size()};
}

std::vector<double> zscores(const std::vector<double>& values) {
    SampleStats stats = sample_stats(values);
    std::vector<double> out(values.size(), 0.0);
    if (stats.stddev == 0.0) return out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = (values[i] - stats.mean) / stats.stddev;
    }
    return out;
}

double IdfTable::idf(char32_t c) const {
    auto it = idf_by_char.find(c);
    if (it != idf_by_char.end()) return it->second;
    return std::log10(static_cast<double>(doc_count));
}

IdfTable build_idf(const std::vector<std::string>& docs) {
    if (docs.empty()) throw std::invalid_argument("build_idf: empty document collection");
    std::map<char32_t, std::size_t> doc_freq;
    for (const std::string& doc : docs) {
        std::set<char32_t> seen;
        for (char32_t c : decode_utf8(doc)) seen.insert(c);
        for (char32_t c : seen) ++doc_freq[c];
    }
    IdfTable table;
    table.doc_count = docs.size();
    double n = static_cast<double>(docs.size());
    for (const auto& [c, df] : doc_freq) {
        table.idf_by_char[c] = std::log10(n / static_cast<double>(df));
    }
    return table;
}

}  // namespace dictlint
