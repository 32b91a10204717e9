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

#ifndef YADR_TOKENIZE_HPP_
#define YADR_TOKENIZE_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yadr/unicode.hpp"

namespace yadr {

using Tokens = std::vector<std::string>;

namespace detail {

inline bool IsWordCluster(const Cluster& c) {
  return c.orphan || IsLetter(c.base) || IsDigit(c.base);
}

// Joiners stay inside a word when flanked by word clusters: ìlú-tí-kò, n'ílé.
inline bool IsJoiner(char32_t c) {
  return c == U'-' || c == U'\'' || c == U'’' || c == U'ʼ';
}

}  // namespace detail

/// Whitespace tokenization with punctuation split off. Every punctuation
/// or symbol code point becomes its own token, except hyphens and
/// apostrophes between two word characters. Digit runs stay whole.
inline Tokens Tokenize(std::string_view line) {
  Tokens out;
  const std::vector<Cluster> clusters = Clusters(line);
  std::string word;
  const auto flush = [&] {
    if (!word.empty()) out.push_back(std::move(word));
    word.clear();
  };
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const Cluster& c = clusters[i];
    if (detail::IsWordCluster(c)) {
      word += c.text;
    } else if (IsSpace(c.base)) {
      flush();
    } else if (detail::IsJoiner(c.base) && !word.empty() &&
               i + 1 < clusters.size() &&
               detail::IsWordCluster(clusters[i + 1])) {
      word += c.text;
    } else {
      flush();
      out.emplace_back(c.text);
    }
  }
  flush();
  return out;
}

/// True when the token contains at least one letter.
inline bool HasLetter(std::string_view token) {
  for (const Cluster& c : Clusters(token))
    if (IsLetter(c.base)) return true;
  return false;
}

/// Digits and punctuation pass through every stage untouched.
inline bool IsPassthroughToken(std::string_view token) {
  return !HasLetter(token);
}

inline std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace yadr

#endif  // YADR_TOKENIZE_HPP_
