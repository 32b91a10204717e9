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

#ifndef YADR_ERROR_ANALYSIS_HPP_
#define YADR_ERROR_ANALYSIS_HPP_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/lexicon.hpp"
#include "yadr/text.hpp"
#include "yadr/tokenize.hpp"

namespace yadr {

enum class TokenCategory {
  kCorrect,
  kUndiacritizedPassthrough,  // hypothesis = source != reference
  kWrongDiacritics,           // same letters, different marks
  kOtherWord,                 // different letters altogether
};

inline constexpr std::array<TokenCategory, 4> kAllCategories{
    TokenCategory::kCorrect, TokenCategory::kUndiacritizedPassthrough,
    TokenCategory::kWrongDiacritics, TokenCategory::kOtherWord};

inline std::string_view CategoryName(TokenCategory c) {
  switch (c) {
    case TokenCategory::kCorrect: return "correct";
    case TokenCategory::kUndiacritizedPassthrough: return "undiacritized-passthrough";
    case TokenCategory::kWrongDiacritics: return "wrong-diacritics";
    case TokenCategory::kOtherWord: return "other-word";
  }
  return "";
}

inline TokenCategory Categorize(std::string_view source, std::string_view reference,
                                std::string_view hypothesis) {
  if (hypothesis == reference) return TokenCategory::kCorrect;
  if (hypothesis == source) return TokenCategory::kUndiacritizedPassthrough;
  if (StripDiacritics(hypothesis) == StripDiacritics(reference))
    return TokenCategory::kWrongDiacritics;
  return TokenCategory::kOtherWord;
}

struct TokenLabel {
  std::size_t line = 0;  // 1-based
  std::size_t index = 0;
  std::string source, reference, hypothesis;
  TokenCategory category = TokenCategory::kCorrect;
  bool digit = false;  // source token contains a digit
  bool oov = false;    // word not in the lexicon (only when one is supplied)
};

// A line whose three sides do not have equal token counts.
struct LineDiagnostic {
  std::size_t line = 0;
  std::size_t source_tokens = 0, reference_tokens = 0, hypothesis_tokens = 0;
};

struct ErrorAnalysis {
  std::vector<TokenLabel> tokens;
  std::array<std::size_t, 4> counts{};  // indexed by TokenCategory
  std::vector<LineDiagnostic> misaligned;
  std::size_t robustness_tokens = 0;  // digit or OOV tokens
  std::size_t robustness_correct = 0;

  std::size_t Total() const { return tokens.size(); }
  std::size_t Count(TokenCategory c) const { return counts[static_cast<std::size_t>(c)]; }
  double Rate(TokenCategory c) const {
    return tokens.empty() ? 0.0 : static_cast<double>(Count(c)) / static_cast<double>(Total());
  }
};

/// Labels every aligned token with exactly one category. Lines whose token
/// counts disagree are reported in `misaligned` and skipped.
inline ErrorAnalysis AnalyzeErrors(std::span<const Tokens> sources,
                                   std::span<const Tokens> references,
                                   std::span<const Tokens> hypotheses,
                                   const Lexicon* lexicon = nullptr) {
  if (sources.size() != references.size() || references.size() != hypotheses.size())
    throw InvalidArgument("error analysis: source/reference/hypothesis line counts differ (" +
                          std::to_string(sources.size()) + "/" +
                          std::to_string(references.size()) + "/" +
                          std::to_string(hypotheses.size()) + ")");
  ErrorAnalysis out;
  for (std::size_t line = 0; line < sources.size(); ++line) {
    const Tokens& src = sources[line];
    const Tokens& ref = references[line];
    const Tokens& hyp = hypotheses[line];
    if (src.size() != ref.size() || ref.size() != hyp.size()) {
      out.misaligned.push_back({line + 1, src.size(), ref.size(), hyp.size()});
      continue;
    }
    for (std::size_t i = 0; i < src.size(); ++i) {
      TokenLabel label{line + 1, i, src[i], ref[i], hyp[i],
                       Categorize(src[i], ref[i], hyp[i])};
      for (const Cluster& c : Clusters(src[i]))
        if (IsDigit(c.base)) label.digit = true;
      label.oov = lexicon && !IsPassthroughToken(src[i]) && !lexicon->Contains(src[i]);
      ++out.counts[static_cast<std::size_t>(label.category)];
      if (label.digit || label.oov) {
        ++out.robustness_tokens;
        if (label.category == TokenCategory::kCorrect) ++out.robustness_correct;
      }
      out.tokens.push_back(std::move(label));
    }
  }
  return out;
}

}  // namespace yadr

#endif  // YADR_ERROR_ANALYSIS_HPP_
