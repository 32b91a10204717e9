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

#ifndef YADR_GRAPHEME_HPP_
#define YADR_GRAPHEME_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "yadr/unicode.hpp"
#include "yadr/utf8.hpp"

namespace yadr {

enum class Tone { kNone, kLow, kHigh, kRising, kMacron };

inline constexpr char32_t kGrave = 0x0300;
inline constexpr char32_t kAcute = 0x0301;
inline constexpr char32_t kMacron = 0x0304;
inline constexpr char32_t kCaron = 0x030C;
inline constexpr char32_t kDotBelow = 0x0323;

inline constexpr char32_t ToneMark(Tone tone) {
  switch (tone) {
    case Tone::kLow: return kGrave;
    case Tone::kHigh: return kAcute;
    case Tone::kRising: return kCaron;
    case Tone::kMacron: return kMacron;
    case Tone::kNone: break;
  }
  return 0;
}

inline constexpr std::string_view ToneName(Tone tone) {
  switch (tone) {
    case Tone::kNone: return "none";
    case Tone::kLow: return "low";
    case Tone::kHigh: return "high";
    case Tone::kRising: return "rising";
    case Tone::kMacron: return "macron";
  }
  return "none";
}

/// One Yorùbá character cluster: a base letter a-z, an optional tone mark,
/// and an optional dot below. Case lives in a flag so the inventory only
/// needs lowercase rows.
struct Grapheme {
  char base = 'a';  // always lowercase
  Tone tone = Tone::kNone;
  bool underdot = false;
  bool uppercase = false;

  friend bool operator==(const Grapheme&, const Grapheme&) = default;

  // Structural invariants of the type; inventory membership is separate.
  static constexpr bool Admissible(char base, Tone tone, bool underdot) {
    if (base < 'a' || base > 'z') return false;
    const auto in = [base](std::string_view set) {
      return set.find(base) != std::string_view::npos;
    };
    if (underdot && !in("eos")) return false;
    switch (tone) {
      case Tone::kNone: return true;
      case Tone::kLow:
      case Tone::kHigh: return in("aeioun");
      case Tone::kRising: return in("aou");
      case Tone::kMacron: return base == 'n';
    }
    return false;
  }

  bool IsMarked() const { return tone != Tone::kNone || underdot; }

  char Letter() const {
    return uppercase ? static_cast<char>(base - 'a' + 'A') : base;
  }

  /// Canonical (NFC) encoding of the cluster.
  std::string Compose() const {
    std::string nfd(1, Letter());
    if (underdot) utf8::Append(nfd, kDotBelow);
    if (tone != Tone::kNone) utf8::Append(nfd, ToneMark(tone));
    return IsMarked() ? Normalize(nfd) : nfd;
  }

  /// Parses one cluster (any normalization form). Returns nullopt when the
  /// cluster is not an ASCII letter carrying only Yorùbá marks in an
  /// admissible combination.
  static std::optional<Grapheme> Parse(std::string_view cluster) {
    const std::string nfd = Decompose(cluster);
    const auto cps = utf8::Decode(nfd);
    if (cps.empty()) return std::nullopt;
    const char32_t letter = cps.front().value;
    Grapheme g;
    if (letter >= 'a' && letter <= 'z') {
      g.base = static_cast<char>(letter);
    } else if (letter >= 'A' && letter <= 'Z') {
      g.base = static_cast<char>(letter - 'A' + 'a');
      g.uppercase = true;
    } else {
      return std::nullopt;
    }
    for (std::size_t i = 1; i < cps.size(); ++i) {
      const char32_t mark = cps[i].value;
      if (mark == kDotBelow) {
        if (g.underdot) return std::nullopt;
        g.underdot = true;
        continue;
      }
      if (g.tone != Tone::kNone) return std::nullopt;
      switch (mark) {
        case kGrave: g.tone = Tone::kLow; break;
        case kAcute: g.tone = Tone::kHigh; break;
        case kCaron: g.tone = Tone::kRising; break;
        case kMacron: g.tone = Tone::kMacron; break;
        default: return std::nullopt;
      }
    }
    if (!Admissible(g.base, g.tone, g.underdot)) return std::nullopt;
    return g;
  }
};

}  // namespace yadr

#endif  // YADR_GRAPHEME_HPP_
