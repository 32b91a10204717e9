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

// Segmentation, diacritic stripping and validation of Yorùbá text.
//
// All functions expect NFC input (see Normalize()) and report positions as
// byte offsets into that input.

#ifndef YADR_TEXT_HPP_
#define YADR_TEXT_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/grapheme.hpp"
#include "yadr/inventory.hpp"
#include "yadr/unicode.hpp"

namespace yadr {

enum class SymbolKind { kDigit, kPunct, kSpace, kForeign };

/// Anything that is not a Yorùbá grapheme, copied verbatim. kForeign marks
/// letter clusters outside the Grapheme model (s-cedilla, a with dot below,
/// Greek letters, ...).
struct Symbol {
  std::string text;
  SymbolKind kind;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};

using Segment = std::variant<Grapheme, Symbol>;

namespace detail {

inline SymbolKind ClassifyNonLetter(char32_t c) {
  if (IsDigit(c)) return SymbolKind::kDigit;
  if (IsSpace(c)) return SymbolKind::kSpace;
  return SymbolKind::kPunct;
}

}  // namespace detail

/// Splits normalized text into graphemes and passthrough symbols.
/// Throws OrphanMarkError for a combining mark with no base letter.
inline std::vector<Segment> SegmentText(std::string_view text) {
  std::vector<Segment> out;
  for (const Cluster& c : Clusters(text)) {
    if (c.orphan) throw OrphanMarkError(c.offset);
    if (!IsLetter(c.base)) {
      out.emplace_back(Symbol{std::string(c.text), detail::ClassifyNonLetter(c.base)});
    } else if (auto g = Grapheme::Parse(c.text)) {
      out.emplace_back(*g);
    } else {
      out.emplace_back(Symbol{std::string(c.text), SymbolKind::kForeign});
    }
  }
  return out;
}

/// Inverse of SegmentText() on normalized text.
inline std::string ComposeSegments(const std::vector<Segment>& segments) {
  std::string out;
  for (const Segment& s : segments) {
    if (const auto* g = std::get_if<Grapheme>(&s)) {
      out += g->Compose();
    } else {
      out += std::get<Symbol>(s).text;
    }
  }
  return out;
}

struct StripWarning {
  std::size_t offset;
  std::string cluster;
};

/// Removes every tone mark and underdot, keeping letter case. Marks on
/// foreign letters are removed too; orphan marks are dropped and reported
/// through `warnings`.
inline std::string StripDiacritics(std::string_view text,
                                   std::vector<StripWarning>* warnings) {
  std::string out;
  out.reserve(text.size());
  for (const Cluster& c : Clusters(text)) {
    if (c.orphan) {
      if (warnings) warnings->push_back({c.offset, std::string(c.text)});
      continue;
    }
    if (!IsLetter(c.base)) {
      out += c.text;
    } else if (c.text.size() == 1) {
      out += c.text;  // plain ASCII letter
    } else if (auto g = Grapheme::Parse(c.text)) {
      out.push_back(g->Letter());
    } else {
      for (const utf8::CodePoint& cp : utf8::Decode(Decompose(c.text)))
        if (!IsCombiningMark(cp.value)) utf8::Append(out, cp.value);
    }
  }
  return out;
}

inline std::string StripDiacritics(std::string_view text) {
  return StripDiacritics(text, nullptr);
}

enum class ViolationReason { kOrphanMark, kForeignCluster, kNotInInventory };

inline std::string_view ReasonName(ViolationReason r) {
  switch (r) {
    case ViolationReason::kOrphanMark: return "orphan mark";
    case ViolationReason::kForeignCluster: return "foreign cluster";
    case ViolationReason::kNotInInventory: return "not in inventory";
  }
  return "";
}

struct Violation {
  std::size_t offset;
  std::string cluster;
  ViolationReason reason;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Lists every cluster that is neither an inventory grapheme nor a digit,
/// punctuation or whitespace symbol. Empty means the text is valid.
inline std::vector<Violation> ValidateText(std::string_view text) {
  std::vector<Violation> out;
  for (const Cluster& c : Clusters(text)) {
    if (c.orphan) {
      out.push_back({c.offset, std::string(c.text), ViolationReason::kOrphanMark});
    } else if (IsLetter(c.base)) {
      const auto g = Grapheme::Parse(c.text);
      if (!g) {
        out.push_back({c.offset, std::string(c.text), ViolationReason::kForeignCluster});
      } else if (!InInventory(*g)) {
        out.push_back({c.offset, std::string(c.text), ViolationReason::kNotInInventory});
      }
    }
  }
  return out;
}

inline bool IsValidText(std::string_view text) {
  return ValidateText(text).empty();
}

}  // namespace yadr

#endif  // YADR_TEXT_HPP_
