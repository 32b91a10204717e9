// Copyright 2026 The yadr Authors
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

// Diacritic restoration over a word lattice: a per-token unigram baseline
// and an exact trigram Viterbi decoder.

#ifndef YADR_DECODE_HPP_
#define YADR_DECODE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/lattice.hpp"
#include "yadr/lexicon.hpp"
#include "yadr/ngram.hpp"

namespace yadr {

struct Alternative {
  std::string form;
  double score = 0.0;  // natural log
  friend bool operator==(const Alternative&, const Alternative&) = default;
};

struct RestoredToken {
  std::string source;
  std::string best;
  std::vector<Alternative> alternatives;  // best first, then by score
  bool passthrough = false;
};

struct Restoration {
  std::vector<RestoredToken> tokens;
  double log_prob = 0.0;
  FixedLog log_prob_fixed = 0;

  Tokens Output() const {
    Tokens out;
    out.reserve(tokens.size());
    for (const RestoredToken& t : tokens) out.push_back(t.best);
    return out;
  }
};

/// Longest sentence the decoders accept; keeps fixed-point sums in range.
inline constexpr std::size_t kMaxDecodeTokens = 100000;

namespace detail {

inline void CheckLength(std::size_t n) {
  if (n > kMaxDecodeTokens)
    throw InvalidArgument("sentence longer than " + std::to_string(kMaxDecodeTokens) +
                          " tokens");
}

// Best alternative first, the rest by descending score then byte order.
inline void RankAlternatives(RestoredToken& token) {
  std::sort(token.alternatives.begin(), token.alternatives.end(),
            [&](const Alternative& a, const Alternative& b) {
              const bool a_best = a.form == token.best, b_best = b.form == token.best;
              if (a_best != b_best) return a_best;
              if (a.score != b.score) return a.score > b.score;
              return a.form < b.form;
            });
}

}  // namespace detail

/// Picks each token's most frequent variant (ties by byte order). Scores
/// are ln(count / key total); passthrough tokens score 0.
inline Restoration RestoreUnigram(const Lexicon& lexicon,
                                  std::span<const std::string> source) {
  detail::CheckLength(source.size());
  Restoration out;
  for (const LatticeSlot& slot : BuildLattice(lexicon, source)) {
    RestoredToken token;
    token.source = slot.source;
    token.passthrough = slot.passthrough;
    token.best = slot.candidates.front().form;  // lexicon order is the argmax order
    std::uint64_t total = 0;
    for (const Candidate& c : slot.candidates) total += c.count;
    for (const Candidate& c : slot.candidates) {
      const double score =
          slot.passthrough ? 0.0
                           : std::log(static_cast<double>(c.count) / static_cast<double>(total));
      token.alternatives.push_back({c.form, score});
    }
    out.log_prob_fixed += ToFixedLog(token.alternatives.front().score);
    detail::RankAlternatives(token);
    out.tokens.push_back(std::move(token));
  }
  out.log_prob = FromFixedLog(out.log_prob_fixed);
  return out;
}

/// Exact trigram Viterbi over the lattice. The chosen path maximizes the
/// sentence log-probability (with </s>); equal scores go to the
/// lexicographically smallest path. Each alternative's score is the best
/// complete path through it.
inline Restoration RestoreViterbi(const NgramModel& model, const Lexicon& lexicon,
                                  std::span<const std::string> source) {
  using Id = NgramModel::Id;
  constexpr FixedLog kNegInf = std::numeric_limits<FixedLog>::min();
  detail::CheckLength(source.size());
  Restoration out;
  const std::size_t n = source.size();
  if (n == 0) return out;

  const Lattice lattice = BuildLattice(lexicon, source);
  std::vector<std::vector<Id>> ids(n);
  std::vector<std::size_t> width(n);
  for (std::size_t i = 0; i < n; ++i) {
    width[i] = lattice[i].candidates.size();
    for (const Candidate& c : lattice[i].candidates) ids[i].push_back(model.IdOf(c.form));
  }
  const auto form = [&](std::size_t i, std::size_t k) -> const std::string& {
    return lattice[i].candidates[k].form;
  };
  // Context id of candidate k at position i; position -1 is <s>.
  const auto context = [&](std::ptrdiff_t i, std::size_t k) -> Id {
    return i < 0 ? NgramModel::kBos : NgramModel::AsContext(ids[i][k]);
  };
  const auto prev_width = [&](std::size_t i) { return i == 0 ? std::size_t{1} : width[i - 1]; };

  // Layer i holds states (p, k): candidate p at i-1 (or <s>) and k at i,
  // stored at p * width[i] + k.
  struct Layer {
    std::vector<FixedLog> delta;
    std::vector<std::uint32_t> back;  // candidate index at i-2
    std::vector<std::uint32_t> rank;  // lexicographic rank of the best prefix
  };
  std::vector<Layer> layers(n);

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t P = prev_width(i), K = width[i];
    Layer& layer = layers[i];
    layer.delta.assign(P * K, kNegInf);
    layer.back.assign(P * K, 0);
    layer.rank.assign(P * K, 0);
    for (std::size_t p = 0; p < P; ++p) {
      for (std::size_t k = 0; k < K; ++k) {
        const std::size_t s = p * K + k;
        if (i == 0) {
          layer.delta[s] = model.LogScoreIds(ids[0][k], NgramModel::kNone, NgramModel::kBos);
          continue;
        }
        const Layer& prev = layers[i - 1];
        const std::size_t Q = prev_width(i - 1);
        for (std::size_t q = 0; q < Q; ++q) {
          const std::size_t ps = q * P + p;
          const FixedLog score =
              prev.delta[ps] + model.LogScoreIds(ids[i][k], context(static_cast<std::ptrdiff_t>(i) - 2, q),
                                                 context(static_cast<std::ptrdiff_t>(i) - 1, p));
          if (score > layer.delta[s] ||
              (score == layer.delta[s] && prev.rank[ps] < prev.rank[layer.back[s] * P + p])) {
            layer.delta[s] = score;
            layer.back[s] = static_cast<std::uint32_t>(q);
          }
        }
      }
    }
    // Rank states by (rank of parent prefix, current form): the order of
    // their best prefixes as token sequences.
    std::vector<std::size_t> order(P * K);
    std::iota(order.begin(), order.end(), 0);
    const auto parent_rank = [&](std::size_t s) -> std::uint32_t {
      if (i == 0) return 0;
      const std::size_t p = s / K;
      return layers[i - 1].rank[layer.back[s] * P + p];
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const auto ra = parent_rank(a), rb = parent_rank(b);
      if (ra != rb) return ra < rb;
      return form(i, a % K) < form(i, b % K);
    });
    for (std::size_t r = 0; r < order.size(); ++r)
      layer.rank[order[r]] = static_cast<std::uint32_t>(r);
  }

  // Close every path with </s>; beta[i][s] is the best completion score
  // from state s at position i.
  std::vector<std::vector<FixedLog>> beta(n);
  {
    const std::size_t P = prev_width(n - 1), K = width[n - 1];
    beta[n - 1].resize(P * K);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t k = 0; k < K; ++k)
        beta[n - 1][p * K + k] = model.LogScoreIds(
            NgramModel::kEos, context(static_cast<std::ptrdiff_t>(n) - 2, p),
            context(static_cast<std::ptrdiff_t>(n) - 1, k));
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    const std::size_t P = prev_width(i), K = width[i], J = width[i + 1];
    beta[i].assign(P * K, kNegInf);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < J; ++j) {
          const FixedLog score =
              model.LogScoreIds(ids[i + 1][j], context(static_cast<std::ptrdiff_t>(i) - 1, p),
                                context(static_cast<std::ptrdiff_t>(i), k)) +
              beta[i + 1][k * J + j];
          beta[i][p * K + k] = std::max(beta[i][p * K + k], score);
        }
  }

  // Best final state: highest total, then smallest prefix rank.
  const std::size_t last_p = prev_width(n - 1), last_k = width[n - 1];
  std::size_t best = 0;
  FixedLog best_total = kNegInf;
  for (std::size_t s = 0; s < last_p * last_k; ++s) {
    const FixedLog total = layers[n - 1].delta[s] + beta[n - 1][s];
    if (total > best_total ||
        (total == best_total && layers[n - 1].rank[s] < layers[n - 1].rank[best])) {
      best_total = total;
      best = s;
    }
  }

  std::vector<std::size_t> path(n);
  {
    std::size_t p = best / last_k, k = best % last_k;
    for (std::size_t i = n; i-- > 0;) {
      path[i] = k;
      if (i == 0) break;
      const std::size_t K = width[i];
      const std::size_t q = layers[i].back[p * K + k];
      k = p;
      p = q;
    }
  }

  out.log_prob_fixed = best_total;
  out.log_prob = FromFixedLog(best_total);
  for (std::size_t i = 0; i < n; ++i) {
    RestoredToken token;
    token.source = lattice[i].source;
    token.passthrough = lattice[i].passthrough;
    token.best = form(i, path[i]);
    const std::size_t P = prev_width(i), K = width[i];
    for (std::size_t k = 0; k < K; ++k) {
      FixedLog marginal = kNegInf;
      for (std::size_t p = 0; p < P; ++p)
        marginal = std::max(marginal, layers[i].delta[p * K + k] + beta[i][p * K + k]);
      token.alternatives.push_back({form(i, k), FromFixedLog(marginal)});
    }
    detail::RankAlternatives(token);
    out.tokens.push_back(std::move(token));
  }
  return out;
}

}  // namespace yadr

#endif  // YADR_DECODE_HPP_
