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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace dictlint {

enum class TokenMode { kWord, kChar };

/// Word mode splits on Unicode whitespace; char mode yields one token per
/// Unicode scalar value. Empty text gives an empty sequence.
std::vector<std::string> tokenize(std::string_view text, TokenMode mode);

/// Additively smoothed n-gram model over opaque text tokens.
///
/// Sequences are padded with order-1 BOS tokens and one EOS token. The
/// predictable event space is the observed vocabulary plus UNK plus EOS
/// (size V); conditional probabilities are (count + delta) / (total +
/// delta * V), so they sum to 1 over that space for any context, and an
/// unseen context yields exactly 1/V. There is no backoff.
class NGramLanguageModel {
  public:
    static constexpr int kUnkId = 0;
    static constexpr int kBosId = 1;
    static constexpr int kEosId = 2;

    /// Trains from token sequences. Requires order >= 1, delta > 0, and at
    /// least one non-empty sequence.
    static NGramLanguageModel train(const std::vector<std::vector<std::string>>& sequences,
                                    int order, double delta);

    int order() const { return order_; }
    double delta() const { return delta_; }

    /// Observed tokens plus UNK.
    std::size_t vocabulary_size() const { return id_to_token_.size() - 2; }

    /// The V of the smoothing formula: vocabulary plus EOS.
    std::size_t event_space_size() const { return vocabulary_size() + 1; }

    /// Observed tokens in first-seen order (reserved symbols excluded).
    std::vector<std::string> vocabulary() const;

    /// Maps a token to its id; unseen tokens map to kUnkId.
    int token_id(const std::string& token) const;

    /// P(token | context). The context is the preceding order-1 tokens;
    /// shorter contexts are left-padded with BOS, longer ones truncated to
    /// their tail. Unseen tokens are scored as UNK.
    double cond_prob(const std::vector<std::string>& context, const std::string& token) const;

    /// P(EOS | context).
    double eos_prob(const std::vector<std::string>& context) const;

    /// Id-based scoring path for hot loops.
    double cond_prob_ids(std::span<const int> context, int token) const;

    /// Mean negative log2 probability per scoring position over the padded
    /// sequence (all tokens plus EOS; BOS pads are context only). An empty
    /// sequence scores the single EOS transition.
    double sequence_entropy(const std::vector<std::string>& tokens) const;

  private:
    NGramLanguageModel() = default;

    struct ContextHash {
        std::size_t operator()(const std::vector<int>& key) const {
            std::uint64_t h = 1469598103934665603ull;
            for (int v : key) {
                h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
                h *= 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

    struct ContextCounts {
        std::unordered_map<int, std::int64_t> by_token;
        std::int64_t total = 0;
    };

    std::vector<int> context_ids(const std::vector<std::string>& context) const;

    int order_ = 1;
    double delta_ = 0.01;
    std::vector<std::string> id_to_token_;  // [0]=UNK, [1]=BOS, [2]=EOS
    std::unordered_map<std::string, int> token_to_id_;
    std::unordered_map<std::vector<int>, ContextCounts, ContextHash> counts_;
};

}  // namespace dictlint
