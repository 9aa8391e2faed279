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
#include <string>
#include <vector>

namespace dictlint {

struct SampleStats {
    double mean = 0.0;
    double stddev = 0.0;  // population (divide by n)
    std::size_t count = 0;
};

/// Population mean and standard deviation. Throws on an empty sample.
SampleStats sample_stats(const std::vector<double>& values);

/// z_i = (v_i - mean) / stddev; all zeros when stddev is 0.
std::vector<double> zscores(const std::vector<double>& values);

/// Per-character inverse document frequency over a document collection,
/// idf(c) = log10(N / df(c)) with set-membership document counting.
struct IdfTable {
    std::size_t doc_count = 0;
    std::map<char32_t, double> idf_by_char;

    /// idf of a character seen in the collection; log10(N) for characters
    /// that appear in no document.
    double idf(char32_t c) const;
};

/// Builds the table from UTF-8 documents; characters are Unicode scalar
/// values. Throws on an empty collection.
IdfTable build_idf(const std::vector<std::string>& docs);

}  // namespace dictlint
