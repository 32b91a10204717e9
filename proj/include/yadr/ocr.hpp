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

// Post-OCR cleanup. OCR engines configured for English, Romanian and
// Vietnamese emit a superset of the Yorùbá alphabet; the rule table maps
// the confusable clusters back and flags the ones that cannot be mapped
// safely. Lines that still look wrong go to a human review queue.

#ifndef YADR_OCR_HPP_
#define YADR_OCR_HPP_

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "yadr/corpus.hpp"
#include "yadr/error.hpp"
#include "yadr/grapheme.hpp"
#include "yadr/lexicon.hpp"
#include "yadr/text.hpp"
#include "yadr/tokenize.hpp"

namespace yadr {

/// from-cluster -> Yorùbá cluster, or FLAG when `to` is empty.
struct CharRule {
  std::string from;
  std::optional<std::string> to;
  friend bool operator==(const CharRule&, const CharRule&) = default;
};

class CharMapTable {
 public:
  CharMapTable() = default;

  /// Normalizes every rule and checks that each replacement is a valid
  /// Yorùbá cluster. Rules are tried longest `from` first; among equal
  /// lengths the given order wins.
  explicit CharMapTable(std::vector<CharRule> rules) {
    for (CharRule& rule : rules) {
      rule.from = Normalize(rule.from);
      if (rule.from.empty()) throw InvalidArgument("rule with empty source cluster");
      if (rule.to) {
        *rule.to = Normalize(*rule.to);
        if (!IsValidText(*rule.to))
          throw InvalidArgument("rule '" + rule.from + "' maps to invalid cluster '" +
                                *rule.to + "'");
      }
    }
    std::stable_sort(rules.begin(), rules.end(), [](const CharRule& a, const CharRule& b) {
      return a.from.size() > b.from.size();
    });
    rules_ = std::move(rules);
  }

  const std::vector<CharRule>& rules() const { return rules_; }

  /// The built-in table: Romanian s-cedilla/comma and the vertical-line
  /// underdot lookalike map onto ṣ/ẹ/ọ; Vietnamese vowels with no Yorùbá
  /// counterpart are flagged.
  static CharMapTable Default();

  static CharMapTable ReadTsv(std::istream& in) {
    std::vector<CharRule> rules;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
        throw FormatError("rule line " + std::to_string(line_no) +
                          ": expected from<TAB>to-or-FLAG");
      const std::string to = line.substr(tab + 1);
      rules.push_back({line.substr(0, tab),
                       to == "FLAG" ? std::nullopt : std::optional<std::string>(to)});
    }
    return CharMapTable(std::move(rules));
  }

  void WriteTsv(std::ostream& out) const {
    for (const CharRule& rule : rules_)
      out << rule.from << '\t' << (rule.to ? *rule.to : "FLAG") << '\n';
  }

 private:
  std::vector<CharRule> rules_;
};

inline CharMapTable CharMapTable::Default() {
  std::vector<CharRule> rules;
  const auto map = [&](std::u32string from, std::string to) {
    rules.push_back({utf8::Encode(from), std::move(to)});
  };
  const auto flag = [&](std::u32string from) {
    rules.push_back({utf8::Encode(from), std::nullopt});
  };

  // Romanian s with cedilla / comma below.
  map(U"ş", "ṣ");
  map(U"Ş", "Ṣ");
  map(U"ș", "ṣ");
  map(U"Ș", "Ṣ");

  // Vertical line below (U+0329), a common stand-in for the dot below;
  // tones valid on the dotted letter carry over.
  for (char base : std::string_view("eos")) {
    for (Tone tone : {Tone::kNone, Tone::kLow, Tone::kHigh}) {
      const Grapheme g{base, tone, true, false};
      if (!InInventory(g)) continue;
      for (bool upper : {false, true}) {
        Grapheme target = g;
        target.uppercase = upper;
        std::u32string from(1, static_cast<char32_t>(target.Letter()));
        from += U'\u0329';
        if (tone != Tone::kNone) from += ToneMark(tone);
        map(from, target.Compose());
      }
    }
  }

  // Vietnamese: the dot-below tone on ê/ô lands on the Yorùbá underdot.
  map(U"ệ", "ẹ");
  map(U"Ệ", "Ẹ");
  map(U"ộ", "ọ");
  map(U"Ộ", "Ọ");

  // Vietnamese vowels with no safe Yorùbá reading.
  for (char32_t dotted : {U'ạ', U'Ạ', U'ị', U'Ị', U'ụ', U'Ụ'})
    flag(std::u32string(1, dotted));
  for (char32_t vowel : std::u32string_view(U"aeiouyAEIOUY"))
    for (char32_t mark : {U'\u0309', U'\u0303'})  // hook above, tilde
      flag(std::u32string{vowel, mark});
  for (char32_t vowel : {U'ê', U'Ê', U'ô', U'Ô'}) {
    flag(std::u32string(1, vowel));
    for (char32_t mark : {U'\u0300', U'\u0301', U'\u0309', U'\u0303'})
      flag(std::u32string{vowel, mark});
  }
  for (char32_t vowel : {U'ă', U'Ă', U'â', U'Â', U'ơ', U'Ơ',
                         U'ư', U'Ư'}) {
    flag(std::u32string(1, vowel));
    for (char32_t mark : {U'\u0300', U'\u0301', U'\u0309', U'\u0303', U'\u0323'})
      flag(std::u32string{vowel, mark});
  }
  return CharMapTable(std::move(rules));
}

struct Substitution {
  std::size_t offset = 0;  // byte offset in the normalized input
  std::string from;
  std::optional<std::string> to;  // empty: flagged, left in place
  bool implicit = false;          // no rule matched; cluster is simply invalid
};

struct MapResult {
  std::string text;
  std::vector<Substitution> log;
  std::vector<Violation> violations;  // of `text`

  bool Flagged() const {
    return std::any_of(log.begin(), log.end(), [](const Substitution& s) { return !s.to; });
  }
};

/// Rewrites every rule match. FLAG matches stay in the text and are
/// logged, as is any remaining cluster that is not valid Yorùbá.
inline MapResult MapSuperset(const CharMapTable& table, std::string_view input) {
  const std::string text = Normalize(input);
  const std::vector<Cluster> clusters = Clusters(text);
  MapResult out;
  std::size_t ci = 0;
  while (ci < clusters.size()) {
    const std::size_t offset = clusters[ci].offset;
    const std::string_view rest = std::string_view(text).substr(offset);
    const CharRule* matched = nullptr;
    std::size_t end_cluster = ci;
    for (const CharRule& rule : table.rules()) {
      if (!rest.starts_with(rule.from)) continue;
      // The match has to end on a cluster boundary.
      std::size_t j = ci, covered = 0;
      while (j < clusters.size() && covered < rule.from.size()) covered += clusters[j++].length;
      if (covered != rule.from.size()) continue;
      matched = &rule;
      end_cluster = j;
      break;
    }
    if (matched) {
      out.text += matched->to ? *matched->to : matched->from;
      out.log.push_back({offset, matched->from, matched->to, false});
      ci = end_cluster;
      continue;
    }
    const std::string_view cluster = clusters[ci].text;
    out.text += cluster;
    if (!IsValidText(cluster)) out.log.push_back({offset, std::string(cluster), std::nullopt, true});
    ++ci;
  }
  out.violations = ValidateText(out.text);
  return out;
}

struct QualityWeights {
  double validity = 0.5;
  double lexicon = 0.5;
};

/// validity * (fraction of tokens with only valid clusters) +
/// lexicon * (fraction of word tokens found as lexicon variants).
/// With an empty lexicon only the validity fraction is used.
inline double QualityScore(const Lexicon& lexicon, std::string_view text,
                           QualityWeights weights = {}) {
  const Tokens tokens = Tokenize(text);
  if (tokens.empty()) return 1.0;
  std::size_t valid = 0, words = 0, hits = 0;
  for (const std::string& token : tokens) {
    if (IsValidText(token)) ++valid;
    if (HasLetter(token)) {
      ++words;
      if (lexicon.HasVariant(token)) ++hits;
    }
  }
  const double validity = static_cast<double>(valid) / static_cast<double>(tokens.size());
  if (lexicon.empty()) return validity;
  const double coverage = words ? static_cast<double>(hits) / static_cast<double>(words) : 1.0;
  return weights.validity * validity + weights.lexicon * coverage;
}

struct ReviewItem {
  std::string doc;
  std::size_t line = 0;  // 1-based
  std::string text;      // as read
  std::string mapped;
  std::vector<std::string> issues;
  double score = 0.0;
};

inline nlohmann::json ToJson(const ReviewItem& item) {
  return {{"doc", item.doc},       {"line", item.line},     {"text", item.text},
          {"mapped", item.mapped}, {"issues", item.issues}, {"score", item.score}};
}

inline ReviewItem ReviewItemFromJson(const nlohmann::json& j) {
  ReviewItem item;
  item.doc = j.at("doc").get<std::string>();
  item.line = j.at("line").get<std::size_t>();
  item.text = j.at("text").get<std::string>();
  item.mapped = j.at("mapped").get<std::string>();
  item.issues = j.at("issues").get<std::vector<std::string>>();
  item.score = j.at("score").get<double>();
  return item;
}

struct Document {
  std::string id;
  std::vector<std::string> lines;
};

/// Throws IoError naming the document when the file cannot be read.
inline Document LoadDocument(const std::string& path, std::string id = {}) {
  if (id.empty()) id = std::filesystem::path(path).filename().string();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("document '" + id + "': cannot read " + path);
  return {std::move(id), ReadLines(in)};
}

struct TriageConfig {
  double threshold = 0.9;
  QualityWeights weights;
};

struct AcceptedLine {
  std::size_t line = 0;
  std::string text;  // after mapping
};

struct TriageResult {
  std::vector<AcceptedLine> accepted;
  std::vector<ReviewItem> queued;
};

/// Maps, scores and routes each line: a line is queued when its score is
/// below the threshold or when anything was flagged; otherwise accepted.
inline TriageResult Triage(const Document& doc, const CharMapTable& table,
                           const Lexicon& lexicon, const TriageConfig& config = {}) {
  if (!(config.threshold >= 0.0 && config.threshold <= 1.0))
    throw InvalidArgument("triage threshold must lie in [0,1]");
  TriageResult result;
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    const std::string& raw = doc.lines[i];
    ReviewItem item{doc.id, i + 1, raw, {}, {}, 0.0};
    MapResult mapped;
    try {
      mapped = MapSuperset(table, raw);
    } catch (const DecodeError& e) {
      item.issues.push_back(e.what());
      result.queued.push_back(std::move(item));
      continue;
    }
    item.mapped = mapped.text;
    item.score = QualityScore(lexicon, mapped.text, config.weights);
    for (const Substitution& s : mapped.log) {
      if (s.to) continue;
      item.issues.push_back((s.implicit ? "unmapped cluster '" : "flagged cluster '") + s.from +
                            "' at byte " + std::to_string(s.offset));
    }
    if (item.score < config.threshold) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "quality %.3f below threshold %.3f", item.score,
                    config.threshold);
      item.issues.emplace_back(buf);
    }
    if (item.issues.empty()) {
      result.accepted.push_back({i + 1, std::move(mapped.text)});
    } else {
      result.queued.push_back(std::move(item));
    }
  }
  return result;
}

/// Append-only review queue: one JSONL file per document inside a
/// directory, merged in file-name order on read. Writers for different
/// documents never share a file.
class ReviewQueue {
 public:
  explicit ReviewQueue(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("review queue: cannot create " + dir_.string() + ": " + ec.message());
  }

  void Append(const std::vector<ReviewItem>& items) {
    std::lock_guard<std::mutex> lock(mutex_);
    for (const ReviewItem& item : items) {
      const auto path = dir_ / (FileStem(item.doc) + ".jsonl");
      std::ofstream out(path, std::ios::binary | std::ios::app);
      if (!out) throw IoError("review queue: cannot append to " + path.string());
      out << ToJson(item).dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
  }

  std::vector<ReviewItem> ReadAll() const {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir_))
      if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<ReviewItem> items;
    for (const auto& path : files) {
      std::ifstream in(path, std::ios::binary);
      std::string line;
      while (std::getline(in, line))
        if (!line.empty()) items.push_back(ReviewItemFromJson(nlohmann::json::parse(line)));
    }
    return items;
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  static std::string FileStem(const std::string& doc) {
    std::string stem;
    for (char c : doc)
      stem.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_');
    return stem.empty() ? "doc" : stem;
  }

  std::filesystem::path dir_;
  std::mutex mutex_;
};

}  // namespace yadr

#endif  // YADR_OCR_HPP_
