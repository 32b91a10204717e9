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

// Strict UTF-8 decoding with byte offsets. Rejects overlong forms,
// surrogates and code points above U+10FFFF.

#ifndef YADR_UTF8_HPP_
#define YADR_UTF8_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "yadr/error.hpp"

namespace yadr::utf8 {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first byte
  std::size_t length;  // encoded length in bytes
};

// Decodes the code point starting at `offset`. Throws DecodeError.
inline CodePoint DecodeAt(std::string_view text, std::size_t offset) {
  const auto byte = [&](std::size_t i) {
    return static_cast<std::uint8_t>(text[i]);
  };
  const std::uint8_t lead = byte(offset);
  if (lead < 0x80) return {lead, offset, 1};

  std::size_t length = 0;
  char32_t value = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2, value = lead & 0x1F, min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3, value = lead & 0x0F, min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4, value = lead & 0x07, min_value = 0x10000;
  } else {
    throw DecodeError(offset, "unexpected lead byte");
  }
  if (offset + length > text.size())
    throw DecodeError(offset, "truncated sequence");
  for (std::size_t i = 1; i < length; ++i) {
    const std::uint8_t cont = byte(offset + i);
    if ((cont & 0xC0) != 0x80)
      throw DecodeError(offset + i, "expected continuation byte");
    value = (value << 6) | (cont & 0x3F);
  }
  if (value < min_value) throw DecodeError(offset, "overlong encoding");
  if (value >= 0xD800 && value <= 0xDFFF)
    throw DecodeError(offset, "encoded surrogate");
  if (value > 0x10FFFF) throw DecodeError(offset, "code point out of range");
  return {value, offset, length};
}

inline std::vector<CodePoint> Decode(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    out.push_back(DecodeAt(text, i));
    i += out.back().length;
  }
  return out;
}

// Throws DecodeError at the first malformed byte.
inline void Validate(std::string_view text) {
  for (std::size_t i = 0; i < text.size();) i += DecodeAt(text, i).length;
}

inline void Append(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

inline std::string Encode(char32_t c) {
  std::string out;
  Append(out, c);
  return out;
}

inline std::string Encode(const std::u32string& cps) {
  std::string out;
  for (char32_t c : cps) Append(out, c);
  return out;
}

}  // namespace yadr::utf8

#endif  // YADR_UTF8_HPP_
