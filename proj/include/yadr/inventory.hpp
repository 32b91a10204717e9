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

// The Yorùbá diacritic inventory: for every base letter, the marked
// variants that are valid in standard orthography.

#ifndef YADR_INVENTORY_HPP_
#define YADR_INVENTORY_HPP_

#include <algorithm>
#include <array>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/grapheme.hpp"

namespace yadr {

struct InventoryRow {
  char base;
  Tone tone;
  bool underdot;
};

namespace detail {

using enum Tone;

// Marked variants only; every base letter also admits its unmarked form.
inline constexpr std::array<InventoryRow, 23> kMarkedRows{{
    {'a', kLow, false},    {'a', kHigh, false},   {'a', kRising, false},
    {'e', kLow, false},    {'e', kHigh, false},   {'e', kNone, true},
    {'e', kLow, true},     {'e', kHigh, true},    {'i', kLow, false},
    {'i', kHigh, false},   {'o', kLow, false},    {'o', kHigh, false},
    {'o', kNone, true},    {'o', kLow, true},     {'o', kHigh, true},
    {'o', kRising, false}, {'u', kLow, false},    {'u', kHigh, false},
    {'u', kRising, false}, {'n', kLow, false},    {'n', kHigh, false},
    {'n', kMacron, false}, {'s', kNone, true},
}};

}  // namespace detail

/// All inventory rows for `base` (a-z), unmarked form first.
inline std::vector<InventoryRow> InventoryRows(char base) {
  if (base < 'a' || base > 'z')
    throw InvalidArgument(std::string("expansions: not a lowercase letter: '") +
                          base + "'");
  std::vector<InventoryRow> rows{{base, Tone::kNone, false}};
  for (const InventoryRow& row : detail::kMarkedRows)
    if (row.base == base) rows.push_back(row);
  return rows;
}

/// Valid variant clusters (NFC) for a lowercase base letter, including the
/// unmarked letter itself. Letters without diacritics yield {base}.
/// Throws InvalidArgument for anything outside a-z.
inline std::vector<std::string> Expansions(char base) {
  std::vector<std::string> out;
  for (const InventoryRow& row : InventoryRows(base))
    out.push_back(Grapheme{row.base, row.tone, row.underdot, false}.Compose());
  return out;
}

inline bool InInventory(const Grapheme& g) {
  if (!g.IsMarked()) return true;
  return std::any_of(detail::kMarkedRows.begin(), detail::kMarkedRows.end(),
                     [&](const InventoryRow& row) {
                       return row.base == g.base && row.tone == g.tone &&
                              row.underdot == g.underdot;
                     });
}

/// Reference TSV: base, variant, tone, underdot. Only letters that carry
/// diacritics are listed.
inline void WriteInventoryTsv(std::ostream& out) {
  out << "base\tvariant\ttone\tunderdot\n";
  for (char base : std::string_view("aeinosu")) {
    for (const InventoryRow& row : InventoryRows(base)) {
      out << base << '\t'
          << Grapheme{row.base, row.tone, row.underdot, false}.Compose() << '\t'
          << ToneName(row.tone) << '\t' << (row.underdot ? 1 : 0) << '\n';
    }
  }
}

}  // namespace yadr

#endif  // YADR_INVENTORY_HPP_
