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

// Normalization and character classes. ICU does the heavy lifting; the
// UTF-8 check in front of it is ours so callers get byte offsets instead of
// silent U+FFFD replacement.

#ifndef YADR_UNICODE_HPP_
#define YADR_UNICODE_HPP_

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/utf8.hpp"

namespace yadr {

namespace detail {

inline const icu::Normalizer2& Nfc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
    return n;
  }();
  return *instance;
}

inline const icu::Normalizer2& Nfd() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
    if (U_FAILURE(status)) throw Error("ICU NFD normalizer unavailable");
    return n;
  }();
  return *instance;
}

inline std::string Apply(const icu::Normalizer2& form, std::string_view text) {
  utf8::Validate(text);
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString source = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  const icu::UnicodeString result = form.normalize(source, status);
  if (U_FAILURE(status)) throw Error(u_errorName(status));
  std::string out;
  result.toUTF8String(out);
  return out;
}

}  // namespace detail

/// Canonical composed form (NFC). Canonical ordering puts the dot below
/// (combining class 220) ahead of tone marks (class 230) in the
/// decomposed view, so clusters such as e + dot below + grave have a single byte encoding.
/// Throws DecodeError on malformed input.
inline std::string Normalize(std::string_view text) {
  return detail::Apply(detail::Nfc(), text);
}

/// Canonical decomposed form (NFD).
inline std::string Decompose(std::string_view text) {
  return detail::Apply(detail::Nfd(), text);
}

inline bool IsCombiningMark(char32_t c) {
  const auto type = static_cast<UCharCategory>(u_charType(static_cast<UChar32>(c)));
  return type == U_NON_SPACING_MARK || type == U_ENCLOSING_MARK ||
         type == U_COMBINING_SPACING_MARK;
}

inline bool IsLetter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)); }

inline bool IsDigit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)); }

inline bool IsSpace(char32_t c) {
  return u_isUWhiteSpace(static_cast<UChar32>(c));
}

/// A base code point together with the combining marks that follow it.
/// Marks attach only to letters; a run of marks at the start of the text
/// or after a non-letter forms an orphan cluster.
struct Cluster {
  std::size_t offset;
  std::size_t length;
  char32_t base;
  bool orphan;
  std::string_view text;
};

/// Splits text into clusters of (base, trailing combining marks).
inline std::vector<Cluster> Clusters(std::string_view text) {
  std::vector<Cluster> out;
  for (const utf8::CodePoint& cp : utf8::Decode(text)) {
    const bool mark = IsCombiningMark(cp.value);
    if (mark && !out.empty() &&
        (out.back().orphan || IsLetter(out.back().base))) {
      out.back().length += cp.length;
      out.back().text = text.substr(out.back().offset, out.back().length);
      continue;
    }
    out.push_back({cp.offset, cp.length, cp.value, mark,
                   text.substr(cp.offset, cp.length)});
  }
  return out;
}

}  // namespace yadr

#endif  // YADR_UNICODE_HPP_
