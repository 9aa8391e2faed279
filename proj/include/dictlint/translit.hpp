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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dictlint/corpus.hpp"
#include "dictlint/ngram.hpp"

namespace dictlint {

/// A paired source/target character segment; the joint token of the
/// transliteration model. Never both empty.
struct Graphone {
    std::u32string source;
    std::u32string target;

    friend auto operator<=>(const Graphone&, const Graphone&) = default;
};

struct TranslitConfig {
    int max_source = 2;       // max scalars per source segment
    int max_target = 2;       // max scalars per target segment
    int em_iterations = 10;
    int lm_order = 3;
    double lm_delta = 0.01;
    int beam_width = 50;
    int nbest = 10;
};

/// A scored transliteration hypothesis. cost is the negative natural log
/// of the joint path probability (floored at 1e-6); score = 1/cost.
struct Candidate {
    std::string text;
    double cost = 0.0;
    double score = 0.0;
};

struct AlignmentResult {
    /// Viterbi-best graphone sequence per input pair, same order.
    std::vector<std::vector<Graphone>> sequences;
    /// Corpus log-likelihood under the parameters entering each EM
    /// iteration; non-decreasing.
    std::vector<double> log_likelihoods;
};

/// EM over all monotone co-segmentations with segment sizes up to
/// (max_source, max_target), null segments included. Initialization is
/// uniform and the iteration count fixed, so results are deterministic.
AlignmentResult align_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                            int max_source, int max_target, int em_iterations);

/// Joint n-gram model over graphones learned from tied-field pairs.
/// Generates scored n-best transliterations of a source text.
class TransliterationModel {
  public:
    static TransliterationModel train(const std::vector<std::pair<std::string, std::string>>& pairs,
                                      const TranslitConfig& cfg = {});

    /// Up to n distinct target texts by ascending cost. Source characters
    /// never seen in any graphone are consumed one at a time through the
    /// UNK-scored pass-through graphone, so the result is never empty.
    std::vector<Candidate> nbest(const std::string& source, int n) const;

    const std::vector<Graphone>& graphone_inventory() const { return inventory_; }
    const NGramLanguageModel& joint_lm() const { return joint_lm_; }
    const TranslitConfig& config() const { return cfg_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

  private:
    TransliterationModel(TranslitConfig cfg, NGramLanguageModel lm)
        : cfg_(cfg), joint_lm_(std::move(lm)) {}

    TranslitConfig cfg_;
    NGramLanguageModel joint_lm_;
    std::vector<Graphone> inventory_;            // sorted, unique
    std::vector<int> lm_token_ids_;              // per inventory index
    std::map<std::u32string, std::vector<int>> by_source_;  // source segment -> inventory indices
    std::vector<std::string> warnings_;
};

/// Trains on the text values of tied pairs (first -> second).
TransliterationModel train_translit(const std::vector<TiedPair>& pairs,
                                    const TranslitConfig& cfg = {});

/// Normalized edit distance: unit-cost Levenshtein over Unicode scalars
/// divided by the longer length; 0 for two empty strings.
double ned(std::string_view a, std::string_view b);

/// Mean NED of the candidates to the observed text, weighted by candidate
/// score. Throws on an empty candidate list.
double expected_ned(const std::vector<Candidate>& candidates, std::string_view observed);

}  // namespace dictlint
