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

// Corpus-level BLEU (multi-bleu.perl semantics), word error rate and
// perplexity.

#ifndef YADR_METRICS_HPP_
#define YADR_METRICS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/tokenize.hpp"

namespace yadr {

struct BleuScore {
  double bleu = 0.0;                    // 0..100
  std::array<double, 4> precisions{};   // clipped, 0..1
  std::array<std::uint64_t, 4> matches{};
  std::array<std::uint64_t, 4> totals{};
  double brevity_penalty = 0.0;
  std::uint64_t hypothesis_length = 0;
  std::uint64_t reference_length = 0;

  double Ratio() const {
    return reference_length ? static_cast<double>(hypothesis_length) /
                                  static_cast<double>(reference_length)
                            : 0.0;
  }

  /// The one-line summary multi-bleu.perl prints.
  std::string ToString() const {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "BLEU = %.2f, %.1f/%.1f/%.1f/%.1f (BP=%.3f, ratio=%.3f, "
                  "hyp_len=%llu, ref_len=%llu)",
                  bleu, 100 * precisions[0], 100 * precisions[1], 100 * precisions[2],
                  100 * precisions[3], brevity_penalty, Ratio(),
                  static_cast<unsigned long long>(hypothesis_length),
                  static_cast<unsigned long long>(reference_length));
    return buf;
  }
};

namespace detail {

inline void CheckParallel(std::size_t refs, std::size_t hyps, const char* what) {
  if (refs != hyps)
    throw InvalidArgument(std::string(what) + ": " + std::to_string(refs) +
                          " reference lines but " + std::to_string(hyps) +
                          " hypothesis lines");
}

inline std::unordered_map<std::string, std::uint64_t> NgramCounts(const Tokens& tokens,
                                                                  std::size_t n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t j = 1; j < n; ++j) (key += ' ') += tokens[i + j];
    ++counts[key];
  }
  return counts;
}

}  // namespace detail

/// Single-reference corpus BLEU over pre-tokenized lines. No smoothing: a
/// zero n-gram precision gives BLEU 0.
inline BleuScore Bleu(std::span<const Tokens> references,
                      std::span<const Tokens> hypotheses) {
  detail::CheckParallel(references.size(), hypotheses.size(), "bleu");
  if (references.empty()) throw EmptyInput("bleu: empty corpus");
  BleuScore score;
  for (std::size_t line = 0; line < references.size(); ++line) {
    const Tokens& ref = references[line];
    const Tokens& hyp = hypotheses[line];
    score.reference_length += ref.size();
    score.hypothesis_length += hyp.size();
    for (std::size_t n = 1; n <= 4; ++n) {
      if (hyp.size() < n) continue;
      score.totals[n - 1] += hyp.size() - n + 1;
      const auto ref_counts = detail::NgramCounts(ref, n);
      for (const auto& [gram, count] : detail::NgramCounts(hyp, n)) {
        const auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) score.matches[n - 1] += std::min(count, it->second);
      }
    }
  }
  if (score.reference_length == 0) throw EmptyInput("bleu: references contain no tokens");

  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t n = 0; n < 4; ++n) {
    score.precisions[n] = score.totals[n] ? static_cast<double>(score.matches[n]) /
                                                static_cast<double>(score.totals[n])
                                          : 0.0;
    if (score.precisions[n] == 0.0) zero = true;
    else log_sum += std::log(score.precisions[n]);
  }
  if (score.hypothesis_length == 0) {
    score.brevity_penalty = 0.0;
  } else if (score.hypothesis_length < score.reference_length) {
    score.brevity_penalty = std::exp(1.0 - static_cast<double>(score.reference_length) /
                                               static_cast<double>(score.hypothesis_length));
  } else {
    score.brevity_penalty = 1.0;
  }
  score.bleu = zero ? 0.0 : 100.0 * score.brevity_penalty * std::exp(log_sum / 4.0);
  return score;
}

struct WerResult {
  double wer = 0.0;  // percent
  std::uint64_t errors = 0;
  std::uint64_t substitutions = 0;
  std::uint64_t insertions = 0;
  std::uint64_t deletions = 0;
  std::uint64_t reference_words = 0;

  /// kaldi compute-wer style.
  std::string ToString() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%%WER %.2f [ %llu / %llu, %llu ins, %llu del, %llu sub ]",
                  wer, static_cast<unsigned long long>(errors),
                  static_cast<unsigned long long>(reference_words),
                  static_cast<unsigned long long>(insertions),
                  static_cast<unsigned long long>(deletions),
                  static_cast<unsigned long long>(substitutions));
    return buf;
  }
};

struct EditCounts {
  std::uint64_t substitutions = 0, insertions = 0, deletions = 0;
  std::uint64_t Total() const { return substitutions + insertions + deletions; }
};

/// Levenshtein alignment of two token sequences with unit costs.
inline EditCounts AlignTokens(const Tokens& ref, const Tokens& hyp) {
  const std::size_t R = ref.size(), H = hyp.size();
  std::vector<std::uint32_t> d((R + 1) * (H + 1));
  const auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return d[i * (H + 1) + j]; };
  for (std::size_t i = 0; i <= R; ++i) at(i, 0) = static_cast<std::uint32_t>(i);
  for (std::size_t j = 0; j <= H; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= R; ++i)
    for (std::size_t j = 1; j <= H; ++j)
      at(i, j) = std::min({at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0u : 1u),
                           at(i - 1, j) + 1, at(i, j - 1) + 1});
  EditCounts counts;
  std::size_t i = R, j = H;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0u : 1u)) {
      if (ref[i - 1] != hyp[j - 1]) ++counts.substitutions;
      --i, --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ++counts.deletions;
      --i;
    } else {
      ++counts.insertions;
      --j;
    }
  }
  return counts;
}

/// Corpus WER: total edit distance over total reference length, x100.
inline WerResult Wer(std::span<const Tokens> references, std::span<const Tokens> hypotheses) {
  detail::CheckParallel(references.size(), hypotheses.size(), "wer");
  WerResult result;
  for (std::size_t line = 0; line < references.size(); ++line) {
    const EditCounts e = AlignTokens(references[line], hypotheses[line]);
    result.substitutions += e.substitutions;
    result.insertions += e.insertions;
    result.deletions += e.deletions;
    result.reference_words += references[line].size();
  }
  if (result.reference_words == 0) throw EmptyInput("wer: empty reference corpus");
  result.errors = result.substitutions + result.insertions + result.deletions;
  result.wer = 100.0 * static_cast<double>(result.errors) /
               static_cast<double>(result.reference_words);
  return result;
}

/// exp(-log_prob / token_count).
inline double Perplexity(double log_prob, long long token_count) {
  if (token_count <= 0) throw InvalidArgument("perplexity: token count must be positive");
  return std::exp(-log_prob / static_cast<double>(token_count));
}

}  // namespace yadr

#endif  // YADR_METRICS_HPP_
