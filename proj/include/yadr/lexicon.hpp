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

#ifndef YADR_LEXICON_HPP_
#define YADR_LEXICON_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yadr/corpus.hpp"
#include "yadr/error.hpp"
#include "yadr/text.hpp"

namespace yadr {

struct Variant {
  std::string form;
  std::uint64_t count = 0;
  friend bool operator==(const Variant&, const Variant&) = default;
};

class LexiconBuilder;

/// Undiacritized form -> observed diacritized variants with counts.
/// Variant lists are ordered by count, descending, then by byte order.
/// Immutable once built; use LexiconBuilder to accumulate counts.
class Lexicon {
 public:
  using EntryMap = std::map<std::string, std::vector<Variant>, std::less<>>;

  Lexicon() = default;

  std::span<const Variant> Lookup(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return {};
    return it->second;
  }

  bool Contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

  /// True when `form` was observed as a variant of its stripped key.
  bool HasVariant(std::string_view form) const {
    for (const Variant& v : Lookup(StripDiacritics(form)))
      if (v.form == form) return true;
    return false;
  }

  const EntryMap& Entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::uint64_t TotalCount() const { return total_; }

  void WriteTsv(std::ostream& out) const {
    for (const auto& [key, variants] : entries_)
      for (const Variant& v : variants)
        out << key << '\t' << v.form << '\t' << v.count << '\n';
  }

  static Lexicon ReadTsv(std::istream& in);

 private:
  friend class LexiconBuilder;
  EntryMap entries_;
  std::uint64_t total_ = 0;
};

class LexiconBuilder {
 public:
  /// Counts one diacritized token under its stripped key.
  void Add(std::string_view form, std::uint64_t count = 1) {
    if (count == 0) return;
    counts_[StripDiacritics(form)][std::string(form)] += count;
    total_ += count;
  }

  void Merge(const Lexicon& other) {
    for (const auto& [key, variants] : other.Entries())
      for (const Variant& v : variants) Add(v.form, v.count);
  }

  Lexicon Build() const {
    Lexicon lexicon;
    lexicon.total_ = total_;
    for (const auto& [key, forms] : counts_) {
      std::vector<Variant> variants;
      variants.reserve(forms.size());
      for (const auto& [form, count] : forms) variants.push_back({form, count});
      std::stable_sort(variants.begin(), variants.end(),
                       [](const Variant& a, const Variant& b) {
                         return a.count != b.count ? a.count > b.count : a.form < b.form;
                       });
      lexicon.entries_.emplace(key, std::move(variants));
    }
    return lexicon;
  }

 private:
  std::map<std::string, std::map<std::string, std::uint64_t>> counts_;
  std::uint64_t total_ = 0;
};

/// Reads key TAB variant TAB count lines. Each variant must strip to its key.
inline Lexicon Lexicon::ReadTsv(std::istream& in) {
  LexiconBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& what) {
    return FormatError("lexicon line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw fail("expected key<TAB>variant<TAB>count");
    const std::string key = Normalize(line.substr(0, tab1));
    const std::string form = Normalize(line.substr(tab1 + 1, tab2 - tab1 - 1));
    const std::string digits = line.substr(tab2 + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw fail("bad count '" + digits + "'");
    const std::uint64_t count = std::stoull(digits);
    if (count == 0) throw fail("zero count");
    if (StripDiacritics(form) != key)
      throw fail("variant '" + form + "' does not strip to key '" + key + "'");
    builder.Add(form, count);
  }
  return builder.Build();
}

/// Counts every target token that contains a letter; digits and
/// punctuation are left out.
inline Lexicon BuildLexicon(const ParallelCorpus& corpus) {
  LexiconBuilder builder;
  for (const ParallelPair& pair : corpus)
    for (const std::string& token : pair.target)
      if (!IsPassthroughToken(token)) builder.Add(token);
  return builder.Build();
}

// ---------------------------------------------------------------------------
// Ambiguity

struct AmbiguityReport {
  // number of variants -> number of keys with that many variants
  std::map<std::size_t, std::size_t> variant_count_histogram;
  std::size_t keys = 0;
  std::size_t ambiguous_keys = 0;
  std::size_t token_occurrences = 0;
  std::size_t ambiguous_occurrences = 0;
  double ambiguous_fraction = 0.0;  // occurrences whose key has >= 2 variants
  double mean_variants_per_token = 0.0;
};

/// Measures how many diacritic arrangements compete for each undiacritized
/// word, weighted by how often the word occurs in `corpus`.
inline AmbiguityReport ComputeAmbiguity(const Lexicon& lexicon,
                                        const ParallelCorpus& corpus) {
  AmbiguityReport report;
  for (const auto& [key, variants] : lexicon.Entries()) {
    ++report.variant_count_histogram[variants.size()];
    ++report.keys;
    if (variants.size() >= 2) ++report.ambiguous_keys;
  }
  std::size_t variant_sum = 0;
  for (const ParallelPair& pair : corpus) {
    for (const std::string& token : pair.source) {
      if (IsPassthroughToken(token)) continue;
      const std::size_t n = std::max<std::size_t>(1, lexicon.Lookup(token).size());
      ++report.token_occurrences;
      variant_sum += n;
      if (n >= 2) ++report.ambiguous_occurrences;
    }
  }
  if (report.token_occurrences == 0)
    throw EmptyInput("ambiguity report: corpus has no word tokens");
  const auto occurrences = static_cast<double>(report.token_occurrences);
  report.ambiguous_fraction = static_cast<double>(report.ambiguous_occurrences) / occurrences;
  report.mean_variants_per_token = static_cast<double>(variant_sum) / occurrences;
  return report;
}

}  // namespace yadr

#endif  // YADR_LEXICON_HPP_
