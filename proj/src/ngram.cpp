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

#include "dictlint/ngram.hpp"

#include <cmath>
#include <stdexcept>

#include "dictlint/unicode.hpp"

namespace dictlint {

std::vector<std::string> tokenize(std::string_view text, TokenMode mode) {
    std::u32string scalars = decode_utf8(text);
    std::vector<std::string> tokens;
    if (mode == TokenMode::kChar) {
        tokens.reserve(scalars.size());
        for (char32_t c : scalars) {
            tokens.push_back(encode_utf8(std::u32string_view(&c, 1)));
        }
        return tokens;
    }
    std::u32string current;
    for (char32_t c : scalars) {
        if (is_whitespace(c)) {
            if (!current.empty()) {
                tokens.push_back(encode_utf8(current));
                current.clear();
            }
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) tokens.push_back(encode_utf8(current));
    return tokens;
}

NGramLanguageModel NGramLanguageModel::train(
    const std::vector<std::vector<std::string>>& sequences, int order, double delta) {
    if (order < 1) throw std::invalid_argument("train: order must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("train: delta must be positive");
    bool any = false;
    for (const auto& seq : sequences) {
        if (!seq.empty()) {
            any = true;
            break;
        }
    }
    if (!any) throw std::invalid_argument("train: all sequences are empty");

    NGramLanguageModel model;
    model.order_ = order;
    model.delta_ = delta;
    model.id_to_token_ = {"<unk>", "<s>", "</s>"};

    auto intern = [&model](const std::string& token) {
        auto [it, inserted] = model.token_to_id_.try_emplace(
            token, static_cast<int>(model.id_to_token_.size()));
        if (inserted) model.id_to_token_.push_back(token);
        return it->second;
    };

    std::vector<int> ids;
    for (const auto& seq : sequences) {
        ids.assign(static_cast<std::size_t>(order - 1), kBosId);
        for (const std::string& token : seq) ids.push_back(intern(token));
        ids.push_back(kEosId);

        std::vector<int> context(static_cast<std::size_t>(order - 1));
        for (std::size_t i = static_cast<std::size_t>(order - 1); i < ids.size(); ++i) {
            context.assign(ids.begin() + static_cast<std::ptrdiff_t>(i) - (order - 1),
                           ids.begin() + static_cast<std::ptrdiff_t>(i));
            ContextCounts& cc = model.counts_[context];
            ++cc.by_token[ids[i]];
            ++cc.total;
        }
    }
    return model;
}

std::vector<std::string> NGramLanguageModel::vocabulary() const {
    return {id_to_token_.begin() + 3, id_to_token_.end()};
}

int NGramLanguageModel::token_id(const std::string& token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? kUnkId : it->second;
}

std::vector<int> NGramLanguageModel::context_ids(const std::vector<std::string>& context) const {
    std::vector<int> ids(static_cast<std::size_t>(order_ - 1), kBosId);
    std::size_t take = std::min(ids.size(), context.size());
    for (std::size_t i = 0; i < take; ++i) {
        ids[ids.size() - take + i] = token_id(context[context.size() - take + i]);
    }
    return ids;
}

double NGramLanguageModel::cond_prob_ids(std::span<const int> context, int token) const {
    double v = static_cast<double>(event_space_size());
    std::vector<int> key(context.begin(), context.end());
    auto it = counts_.find(key);
    if (it == counts_.end()) return 1.0 / v;
    const ContextCounts& cc = it->second;
    auto tok = cc.by_token.find(token);
    double count = tok == cc.by_token.end() ? 0.0 : static_cast<double>(tok->second);
    return (count + delta_) / (static_cast<double>(cc.total) + delta_ * v);
}

double NGramLanguageModel::cond_prob(const std::vector<std::string>& context,
                                     const std::string& token) const {
    std::vector<int> ids = context_ids(context);
    return cond_prob_ids(ids, token_id(token));
}

double NGramLanguageModel::eos_prob(const std::vector<std::string>& context) const {
    std::vector<int> ids = context_ids(context);
    return cond_prob_ids(ids, kEosId);
}

double NGramLanguageModel::sequence_entropy(const std::vector<std::string>& tokens) const {
    std::vector<int> ids(static_cast<std::size_t>(order_ - 1), kBosId);
    ids.reserve(ids.size() + tokens.size() + 1);
    for (const std::string& token : tokens) ids.push_back(token_id(token));
    ids.push_back(kEosId);

    double log_prob_sum = 0.0;
    for (std::size_t i = static_cast<std::size_t>(order_ - 1); i < ids.size(); ++i) {
        std::span<const int> context(ids.data() + i - static_cast<std::size_t>(order_ - 1),
                                     static_cast<std::size_t>(order_ - 1));
        log_prob_sum += std::log2(cond_prob_ids(context, ids[i]));
    }
    double positions = static_cast<double>(tokens.size() + 1);
    return -log_prob_sum / positions;
}

}  // namespace dictlint
