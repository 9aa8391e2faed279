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

#include "dictlint/translit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "dictlint/unicode.hpp"

namespace dictlint {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

// Joint-LM token for a graphone; U+001F cannot occur in XML text.
std::string graphone_token(const Graphone& g) {
    return encode_utf8(g.source) + '\x1F' + encode_utf8(g.target);
}

struct U32Pair {
    std::vector<char32_t> pair_source;  // decoded first field
    std::vector<char32_t> pair_target;  // decoded second field
};

// Deterministic graphone registry: ids follow (source, target) order.
class GraphoneRegistry {
  public:
    explicit GraphoneRegistry(std::map<Graphone, int> ordered) : by_graphone_(std::move(ordered)) {
        graphones_.resize(by_graphone_.size());
        int next = 0;
        for (auto& [g, id] : by_graphone_) {
            id = next++;
            graphones_[static_cast<std::size_t>(id)] = g;
        }
    }

    int id_of(const Graphone& g) const { return by_graphone_.at(g); }
    std::size_t size() const { return by_graphone_.size(); }
    const Graphone& graphone(int id) const { return graphones_[static_cast<std::size_t>(id)]; }

  private:
    std::map<Graphone, int> by_graphone_;
    std::vector<Graphone> graphones_;
};

Graphone arc_graphone(const std::u32string& x, const std::u32string& y, std::size_t i,
                      std::size_t j, std::size_t s, std::size_t t) {
    return Graphone{x.substr(i, s), y.substr(j, t)};
}

}  // namespace

AlignmentResult align_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                            int max_source, int max_target, int em_iterations) {
    if (pairs.empty()) throw std::invalid_argument("align_pairs: no pairs");
    if (max_source < 1 || max_target < 1) {
        throw std::invalid_argument("align_pairs: segment size limits must be >= 1");
    }
    if (em_iterations < 0) throw std::invalid_argument("align_pairs: negative iteration count");

    const auto max_s = static_cast<std::size_t>(max_source);
    const auto max_t = static_cast<std::size_t>(max_target);

    std::vector<std::u32string> sources;
    std::vector<std::u32string> targets;
    sources.reserve(pairs.size());
    targets.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        sources.push_back(decode_utf8(a));
        targets.push_back(decode_utf8(b));
    }

    // Collect every graphone reachable in any pair's lattice.
    std::map<Graphone, int> seen;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::u32string& x = sources[p];
        const std::u32string& y = targets[p];
        for (std::size_t i = 0; i <= x.size(); ++i) {
            for (std::size_t j = 0; j <= y.size(); ++j) {
                for (std::size_t s = 0; s <= max_s && i + s <= x.size(); ++s) {
                    for (std::size_t t = 0; t <= max_t && j + t <= y.size(); ++t) {
                        if (s == 0 && t == 0) continue;
                        seen.emplace(arc_graphone(x, y, i, j, s, t), 0);
                    }
                }
            }
        }
    }
    GraphoneRegistry registry(std::move(seen));
    if (registry.size() == 0) {
        // Only possible when every pair is ("", "").
        AlignmentResult result;
        result.sequences.assign(pairs.size(), {});
        result.log_likelihoods.assign(static_cast<std::size_t>(em_iterations), 0.0);
        return result;
    }

    // Arc ids per pair, resolved once: index (node * move_count + move)
    // with move = s * (max_target + 1) + t - 1 and -1 for invalid arcs.
    const std::size_t move_count = (max_s + 1) * (max_t + 1) - 1;
    std::vector<std::vector<int>> pair_arcs(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::u32string& x = sources[p];
        const std::u32string& y = targets[p];
        const std::size_t cols = y.size() + 1;
        std::vector<int>& arcs = pair_arcs[p];
        arcs.assign((x.size() + 1) * cols * move_count, -1);
        for (std::size_t i = 0; i <= x.size(); ++i) {
            for (std::size_t j = 0; j <= y.size(); ++j) {
                for (std::size_t s = 0; s <= max_s && i + s <= x.size(); ++s) {
                    for (std::size_t t = 0; t <= max_t && j + t <= y.size(); ++t) {
                        if (s == 0 && t == 0) continue;
                        std::size_t move = s * (max_t + 1) + t - 1;
                        arcs[(i * cols + j) * move_count + move] =
                            registry.id_of(arc_graphone(x, y, i, j, s, t));
                    }
                }
            }
        }
    }
    auto move_shape = [max_t](std::size_t move) {
        return std::pair<std::size_t, std::size_t>((move + 1) / (max_t + 1),
                                                   (move + 1) % (max_t + 1));
    };

    std::vector<double> log_prob(registry.size(),
                                 -std::log(static_cast<double>(registry.size())));
    AlignmentResult result;

    std::vector<double> counts(registry.size());
    std::vector<double> alpha;
    std::vector<double> beta;
    for (int iter = 0; iter < em_iterations; ++iter) {
        std::fill(counts.begin(), counts.end(), 0.0);
        double corpus_ll = 0.0;

        for (std::size_t p = 0; p < pairs.size(); ++p) {
            const std::u32string& x = sources[p];
            const std::u32string& y = targets[p];
            if (x.empty() && y.empty()) continue;  // trivially aligned, likelihood 1
            const std::size_t cols = y.size() + 1;
            const std::vector<int>& arcs = pair_arcs[p];
            auto node = [cols](std::size_t i, std::size_t j) { return i * cols + j; };

            alpha.assign((x.size() + 1) * cols, kNegInf);
            alpha[0] = 0.0;
            for (std::size_t from_node = 0; from_node < alpha.size(); ++from_node) {
                double from = alpha[from_node];
                if (from == kNegInf) continue;
                std::size_t i = from_node / cols;
                std::size_t j = from_node % cols;
                for (std::size_t move = 0; move < move_count; ++move) {
                    int id = arcs[from_node * move_count + move];
                    if (id < 0) continue;
                    auto [s, t] = move_shape(move);
                    std::size_t to = node(i + s, j + t);
                    alpha[to] = log_add(alpha[to], from + log_prob[static_cast<std::size_t>(id)]);
                }
            }
            double z = alpha[node(x.size(), y.size())];
            if (z == kNegInf) {
                throw std::runtime_error("align_pairs: empty alignment lattice for pair " +
                                         std::to_string(p));
            }
            corpus_ll += z;

            beta.assign((x.size() + 1) * cols, kNegInf);
            beta[node(x.size(), y.size())] = 0.0;
            for (std::size_t from_node = beta.size(); from_node-- > 0;) {
                if (from_node == beta.size() - 1) continue;
                std::size_t i = from_node / cols;
                std::size_t j = from_node % cols;
                double total = kNegInf;
                for (std::size_t move = 0; move < move_count; ++move) {
                    int id = arcs[from_node * move_count + move];
                    if (id < 0) continue;
                    auto [s, t] = move_shape(move);
                    total = log_add(total, log_prob[static_cast<std::size_t>(id)] +
                                               beta[node(i + s, j + t)]);
                }
                beta[from_node] = total;
            }

            for (std::size_t from_node = 0; from_node < alpha.size(); ++from_node) {
                double from = alpha[from_node];
                if (from == kNegInf) continue;
                std::size_t i = from_node / cols;
                std::size_t j = from_node % cols;
                for (std::size_t move = 0; move < move_count; ++move) {
                    int id = arcs[from_node * move_count + move];
                    if (id < 0) continue;
                    auto [s, t] = move_shape(move);
                    double post = from + log_prob[static_cast<std::size_t>(id)] +
                                  beta[node(i + s, j + t)] - z;
                    if (post > -745.0) {  // exp underflows below this
                        counts[static_cast<std::size_t>(id)] += std::exp(post);
                    }
                }
            }
        }

        result.log_likelihoods.push_back(corpus_ll);

        double total = 0.0;
        for (double c : counts) total += c;
        if (total > 0.0) {
            for (std::size_t g = 0; g < counts.size(); ++g) {
                log_prob[g] = counts[g] > 0.0 ? std::log(counts[g] / total) : kNegInf;
            }
        }
    }

    // Viterbi decode each pair under the final parameters.
    result.sequences.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const std::u32string& x = sources[p];
        const std::u32string& y = targets[p];
        const std::size_t cols = y.size() + 1;
        const std::vector<int>& arcs = pair_arcs[p];
        auto node = [cols](std::size_t i, std::size_t j) { return i * cols + j; };

        std::vector<double> best((x.size() + 1) * cols, kNegInf);
        std::vector<int> back_arc((x.size() + 1) * cols, -1);
        std::vector<std::size_t> back_node((x.size() + 1) * cols, 0);
        best[0] = 0.0;
        for (std::size_t from_node = 0; from_node < best.size(); ++from_node) {
            double from = best[from_node];
            if (from == kNegInf) continue;
            std::size_t i = from_node / cols;
            std::size_t j = from_node % cols;
            for (std::size_t move = 0; move < move_count; ++move) {
                int id = arcs[from_node * move_count + move];
                if (id < 0) continue;
                auto [s, t] = move_shape(move);
                double cand = from + log_prob[static_cast<std::size_t>(id)];
                std::size_t to = node(i + s, j + t);
                if (cand > best[to]) {
                    best[to] = cand;
                    back_arc[to] = id;
                    back_node[to] = from_node;
                }
            }
        }
        std::size_t end = node(x.size(), y.size());
        if (best[end] == kNegInf && !(x.empty() && y.empty())) {
            throw std::runtime_error("align_pairs: no Viterbi path for pair " + std::to_string(p));
        }
        std::vector<Graphone> sequence;
        for (std::size_t at = end; back_arc[at] >= 0; at = back_node[at]) {
            sequence.push_back(registry.graphone(back_arc[at]));
        }
        std::reverse(sequence.begin(), sequence.end());
        result.sequences.push_back(std::move(sequence));
    }
    return result;
}

TransliterationModel TransliterationModel::train(
    const std::vector<std::pair<std::string, std::string>>& pairs, const TranslitConfig& cfg) {
    bool any_source = false;
    bool any_target = false;
    for (const auto& [a, b] : pairs) {
        if (!a.empty()) any_source = true;
        if (!b.empty()) any_target = true;
    }
    if (!any_source) {
        throw std::invalid_argument("train: need at least one pair with a non-empty first field");
    }

    AlignmentResult aligned = align_pairs(pairs, cfg.max_source, cfg.max_target, cfg.em_iterations);

    std::vector<std::vector<std::string>> token_sequences;
    token_sequences.reserve(aligned.sequences.size());
    std::map<Graphone, int> unique;
    for (const auto& sequence : aligned.sequences) {
        std::vector<std::string> tokens;
        tokens.reserve(sequence.size());
        for (const Graphone& g : sequence) {
            tokens.push_back(graphone_token(g));
            unique.emplace(g, 0);
        }
        token_sequences.push_back(std::move(tokens));
    }

    TransliterationModel model(cfg, NGramLanguageModel::train(token_sequences, cfg.lm_order,
                                                              cfg.lm_delta));
    if (!any_target) {
        model.warnings_.push_back("degenerate corpus: every second field is empty");
    }

    model.inventory_.reserve(unique.size());
    for (const auto& [g, _] : unique) model.inventory_.push_back(g);
    model.lm_token_ids_.reserve(model.inventory_.size());
    for (std::size_t idx = 0; idx < model.inventory_.size(); ++idx) {
        const Graphone& g = model.inventory_[idx];
        model.lm_token_ids_.push_back(model.joint_lm_.token_id(graphone_token(g)));
        if (!g.source.empty()) {
            model.by_source_[g.source].push_back(static_cast<int>(idx));
        }
    }
    return model;
}

namespace {

struct BeamState {
    std::vector<int> context;  // last order-1 LM token ids
    std::u32string target;
    double cost = 0.0;
};

bool state_order(const BeamState& a, const BeamState& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.target != b.target) return a.target < b.target;
    return a.context < b.context;
}

std::vector<int> shifted_context(const std::vector<int>& context, int token) {
    if (context.empty()) return context;
    std::vector<int> out(context.begin() + 1, context.end());
    out.push_back(token);
    return out;
}

}  // namespace

std::vector<Candidate> TransliterationModel::nbest(const std::string& source, int n) const {
    if (n < 1) throw std::invalid_argument("nbest: n must be >= 1");
    const std::u32string src = decode_utf8(source);
    const auto order = static_cast<std::size_t>(joint_lm_.order());

    std::vector<std::vector<BeamState>> frontier(src.size() + 1);
    frontier[0].push_back(BeamState{std::vector<int>(order - 1, NGramLanguageModel::kBosId),
                                    std::u32string(), 0.0});

    auto prune = [this](std::vector<BeamState>& states) {
        std::sort(states.begin(), states.end(), state_order);
        // Merge duplicate (context, target) states, keeping the cheapest.
        std::vector<BeamState> merged;
        for (BeamState& s : states) {
            bool dup = false;
            for (const BeamState& kept : merged) {
                if (kept.context == s.context && kept.target == s.target) {
                    dup = true;
                    break;
                }
            }
            if (!dup) merged.push_back(std::move(s));
            if (merged.size() >= static_cast<std::size_t>(cfg_.beam_width)) break;
        }
        states = std::move(merged);
    };

    // Inventory matches per (position, segment length), resolved once.
    std::vector<std::vector<const std::vector<int>*>> matches(src.size());
    for (std::size_t pos = 0; pos < src.size(); ++pos) {
        for (std::size_t s = 1; s <= static_cast<std::size_t>(cfg_.max_source) &&
                                pos + s <= src.size();
             ++s) {
            auto match = by_source_.find(src.substr(pos, s));
            matches[pos].push_back(match == by_source_.end() ? nullptr : &match->second);
        }
    }

    std::map<std::u32string, double> finals;  // target -> best total cost
    for (std::size_t pos = 0; pos <= src.size(); ++pos) {
        prune(frontier[pos]);
        for (const BeamState& state : frontier[pos]) {
            if (pos == src.size()) {
                double p = joint_lm_.cond_prob_ids(state.context, NGramLanguageModel::kEosId);
                double total = state.cost - std::log(p);
                auto [it, inserted] = finals.emplace(state.target, total);
                if (!inserted && total < it->second) it->second = total;
                continue;
            }
            bool expanded = false;
            for (std::size_t s = 1; s <= matches[pos].size(); ++s) {
                if (matches[pos][s - 1] == nullptr) continue;
                for (int idx : *matches[pos][s - 1]) {
                    const Graphone& g = inventory_[static_cast<std::size_t>(idx)];
                    double p = joint_lm_.cond_prob_ids(state.context,
                                                       lm_token_ids_[static_cast<std::size_t>(idx)]);
                    BeamState next;
                    next.context = shifted_context(state.context,
                                                   lm_token_ids_[static_cast<std::size_t>(idx)]);
                    next.target = state.target + g.target;
                    next.cost = state.cost - std::log(p);
                    frontier[pos + s].push_back(std::move(next));
                    expanded = true;
                }
            }
            if (!expanded) {
                // Unseen source character: consume it as an UNK-scored
                // pass-through graphone.
                double p = joint_lm_.cond_prob_ids(state.context, NGramLanguageModel::kUnkId);
                BeamState next;
                next.context = shifted_context(state.context, NGramLanguageModel::kUnkId);
                next.target = state.target + src[pos];
                next.cost = state.cost - std::log(p);
                frontier[pos + 1].push_back(std::move(next));
            }
        }
    }

    std::vector<Candidate> candidates;
    candidates.reserve(finals.size());
    for (const auto& [target, cost] : finals) {
        Candidate c;
        c.text = encode_utf8(target);
        c.cost = std::max(cost, 1e-6);
        c.score = 1.0 / c.cost;
        candidates.push_back(std::move(c));
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.text < b.text;
    });
    if (candidates.size() > static_cast<std::size_t>(n)) {
        candidates.resize(static_cast<std::size_t>(n));
    }
    return candidates;
}

TransliterationModel train_translit(const std::vector<TiedPair>& pairs,
                                    const TranslitConfig& cfg) {
    std::vector<std::pair<std::string, std::string>> texts;
    texts.reserve(pairs.size());
    for (const TiedPair& pair : pairs) {
        texts.emplace_back(pair.first.text_value, pair.second.text_value);
    }
    return TransliterationModel::train(texts, cfg);
}

double ned(std::string_view a, std::string_view b) {
    std::u32string ua = decode_utf8(a);
    std::u32string ub = decode_utf8(b);
    if (ua.empty() && ub.empty()) return 0.0;

    std::vector<std::size_t> prev(ub.size() + 1);
    std::vector<std::size_t> row(ub.size() + 1);
    for (std::size_t j = 0; j <= ub.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= ua.size(); ++i) {
        row[0] = i;
        for (std::size_t j = 1; j <= ub.size(); ++j) {
            std::size_t sub = prev[j - 1] + (ua[i - 1] == ub[j - 1] ? 0 : 1);
            row[j] = std::min({prev[j] + 1, row[j - 1] + 1, sub});
        }
        std::swap(prev, row);
    }
    double distance = static_cast<double>(prev[ub.size()]);
    return distance / static_cast<double>(std::max(ua.size(), ub.size()));
}

double expected_ned(const std::vector<Candidate>& candidates, std::string_view observed) {
    if (candidates.empty()) throw std::invalid_argument("expected_ned: no candidates");
    double weighted = 0.0;
    double total = 0.0;
    for (const Candidate& c : candidates) {
        weighted += c.score * ned(c.text, observed);
        total += c.score;
    }
    return weighted / total;
}

}  // namespace dictlint
