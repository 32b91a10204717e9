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

// Trigram language model over diacritized tokens with stupid backoff.
//
// Scores are unnormalized relative frequencies:
//   S(w | u v) = c(u v w) / c(u v)            if c(u v w) > 0
//              = alpha * S(w | v)             otherwise
//   S(w | v)   = c(v w) / c(v)                if c(v w) > 0
//              = alpha * S(w)                 otherwise
//   S(w)       = c(w) / N,  or 1 / (V + 1) for unseen w
// Each sentence is padded with one <s> and one </s>. N counts every
// predicted event (words and </s>); V is the number of word types.

#ifndef YADR_NGRAM_HPP_
#define YADR_NGRAM_HPP_

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/tokenize.hpp"

namespace yadr {

/// Log-scores are summed in fixed point (units of 2^-40 nats) so that the
/// total of a path does not depend on summation order. Path comparisons in
/// the decoder are therefore exact.
using FixedLog = std::int64_t;
inline constexpr double kFixedLogScale = 1099511627776.0;  // 2^40

inline FixedLog ToFixedLog(double log_value) {
  return static_cast<FixedLog>(std::llround(log_value * kFixedLogScale));
}

inline double FromFixedLog(FixedLog fixed) {
  return static_cast<double>(fixed) / kFixedLogScale;
}

class NgramModel {
 public:
  using Id = std::uint32_t;
  static constexpr Id kNone = std::numeric_limits<Id>::max();  // absent / OOV
  // A context token that was never seen in training: the context exists
  // but matches no count.
  static constexpr Id kUnseen = kNone - 1;
  static constexpr Id kBos = 0;
  static constexpr Id kEos = 1;
  static constexpr std::string_view kBosToken = "<s>";
  static constexpr std::string_view kEosToken = "</s>";
  static constexpr double kDefaultAlpha = 0.4;
  static constexpr int kOrder = 3;

  NgramModel() : NgramModel(kDefaultAlpha) {}

  explicit NgramModel(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw InvalidArgument("backoff factor must lie in (0,1)");
    Intern(kBosToken);
    Intern(kEosToken);
  }

  /// Counts n = 1..3 over the sentences. Empty sentences are skipped.
  /// Throws EmptyInput when nothing is left to count.
  static NgramModel Train(std::span<const Tokens> sentences,
                          double alpha = kDefaultAlpha) {
    NgramModel model(alpha);
    std::vector<Id> ids;
    for (const Tokens& sentence : sentences) {
      if (sentence.empty()) continue;
      ids.assign(1, kBos);
      for (const std::string& token : sentence) ids.push_back(model.Intern(token));
      ids.push_back(kEos);
      for (std::size_t i = 0; i < ids.size(); ++i) {
        model.AddNgram({ids[i]});
        if (i >= 1) model.AddNgram({ids[i - 1], ids[i]});
        if (i >= 2) model.AddNgram({ids[i - 2], ids[i - 1], ids[i]});
      }
    }
    if (model.sentences_ == 0) throw EmptyInput("cannot train on an empty corpus");
    return model;
  }

  double alpha() const { return alpha_; }
  std::size_t VocabSize() const { return vocab_; }
  std::uint64_t EventCount() const { return events_; }
  std::uint64_t SentenceCount() const { return sentences_; }

  /// Id of a token, kNone when it was never seen.
  Id IdOf(std::string_view token) const {
    const auto it = ids_.find(std::string(token));
    return it == ids_.end() ? kNone : it->second;
  }

  const std::string& TokenOf(Id id) const { return words_.at(id); }

  /// Maps an OOV id to kUnseen so it can sit in a context slot.
  static constexpr Id AsContext(Id id) { return id == kNone ? kUnseen : id; }

  /// Raw count of an n-gram given as tokens (n = 1..3); 0 when unseen.
  std::uint64_t Count(std::span<const std::string> ngram) const {
    if (ngram.empty() || ngram.size() > 3) return 0;
    Key key{kNone, kNone, kNone};
    for (std::size_t i = 0; i < ngram.size(); ++i) {
      const Id id = IdOf(ngram[i]);
      if (id == kNone) return 0;
      key[3 - ngram.size() + i] = id;
    }
    return Lookup(key);
  }

  /// Backoff score of `w` after the two previous tokens `u v`; either may
  /// be kNone for a shorter context. Always > 0.
  double ScoreIds(Id w, Id u, Id v) const {
    double penalty = 1.0;
    if (u != kNone && v != kNone) {
      const std::uint64_t history = Lookup({kNone, u, v});
      if (history > 0 && w != kNone) {
        const std::uint64_t c = Lookup({u, v, w});
        if (c > 0) return static_cast<double>(c) / static_cast<double>(history);
      }
      penalty *= alpha_;
    }
    if (v != kNone) {
      const std::uint64_t history = Lookup({kNone, kNone, v});
      if (history > 0 && w != kNone) {
        const std::uint64_t c = Lookup({kNone, v, w});
        if (c > 0) return penalty * static_cast<double>(c) / static_cast<double>(history);
      }
      penalty *= alpha_;
    }
    const std::uint64_t c = w == kNone || w == kBos ? 0 : Lookup({kNone, kNone, w});
    if (c > 0) return penalty * static_cast<double>(c) / static_cast<double>(events_);
    return penalty / static_cast<double>(vocab_ + 1);
  }

  /// Score of `token` given up to two previous tokens (the last two of
  /// `context` are used; "<s>" is a valid context token).
  double Score(std::string_view token, std::span<const std::string> context) const {
    Id u = kNone, v = kNone;
    if (!context.empty()) v = IdOf(context.back());
    if (context.size() >= 2) u = IdOf(context[context.size() - 2]);
    // An unseen context token still counts as context: it forces backoff.
    const Id w = token == kEosToken ? kEos : IdOf(token);
    if (!context.empty() && v == kNone) v = kUnseen;
    if (context.size() >= 2 && u == kNone) u = kUnseen;
    return ScoreIds(w, u, v);
  }

  /// ln ScoreIds() in fixed point.
  FixedLog LogScoreIds(Id w, Id u, Id v) const {
    return ToFixedLog(std::log(ScoreIds(w, u, v)));
  }

  /// Log-probability of a sentence in fixed point, including the
  /// transition into </s>.
  FixedLog SequenceLogProbFixed(std::span<const std::string> tokens) const {
    Id u = kNone, v = kBos;
    FixedLog total = 0;
    for (const std::string& token : tokens) {
      const Id w = IdOf(token);
      total += LogScoreIds(w, u, v);
      u = v;
      v = AsContext(w);
    }
    return total + LogScoreIds(kEos, u, v);
  }

  /// Natural-log probability of a sentence with <s>/</s> padding.
  double SequenceLogProb(std::span<const std::string> tokens) const {
    return FromFixedLog(SequenceLogProbFixed(tokens));
  }

  /// Count dump: header lines starting with '#', then
  /// n TAB context (space separated) TAB token TAB count, sorted.
  void WriteTsv(std::ostream& out) const {
    char buf[64];
    const auto end = std::to_chars(buf, buf + sizeof buf, alpha_).ptr;
    out << "#yadr-ngram\tversion\t1\n"
        << "#alpha\t" << std::string_view(buf, end - buf) << '\n'
        << "#vocab\t" << vocab_ << '\n'
        << "#order\t" << kOrder << '\n';
    std::vector<std::tuple<int, std::string, std::string, std::uint64_t>> rows;
    rows.reserve(counts_.size());
    for (const auto& [key, count] : counts_) {
      int n = 0;
      std::string context;
      for (int i = 0; i < 2; ++i) {
        if (key[i] == kNone) continue;
        if (!context.empty()) context.push_back(' ');
        context += words_[key[i]];
        ++n;
      }
      rows.emplace_back(n + 1, std::move(context), words_[key[2]], count);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto& [n, context, token, count] : rows)
      out << n << '\t' << context << '\t' << token << '\t' << count << '\n';
  }

  /// Inverse of WriteTsv(). `alpha_override` > 0 replaces the stored factor.
  static NgramModel ReadTsv(std::istream& in, double alpha_override = 0.0) {
    std::string line;
    std::size_t line_no = 0;
    const auto fail = [&](const std::string& what) {
      return FormatError("model line " + std::to_string(line_no) + ": " + what);
    };
    double alpha = kDefaultAlpha;
    long long declared_vocab = -1;
    bool saw_magic = false;
    std::vector<std::tuple<int, std::string, std::string, std::uint64_t>> rows;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const std::vector<std::string> fields = SplitTabs(line);
      if (line[0] == '#') {
        if (fields[0] == "#yadr-ngram") {
          if (fields.size() != 3 || fields[1] != "version" || fields[2] != "1")
            throw fail("unsupported model version");
          saw_magic = true;
        } else if (fields[0] == "#alpha" && fields.size() == 2) {
          alpha = ParseDouble(fields[1], fail);
        } else if (fields[0] == "#vocab" && fields.size() == 2) {
          declared_vocab = static_cast<long long>(ParseCount(fields[1], fail));
        } else if (fields[0] == "#order" && fields.size() == 2) {
          if (fields[1] != "3") throw fail("only order 3 is supported");
        }
        continue;
      }
      if (!saw_magic) throw fail("missing #yadr-ngram header");
      if (fields.size() != 4) throw fail("expected 4 tab-separated fields");
      if (fields[0] != "1" && fields[0] != "2" && fields[0] != "3") throw fail("bad order");
      rows.emplace_back(fields[0][0] - '0', fields[1], fields[2], ParseCount(fields[3], fail));
    }
    if (!saw_magic) throw FormatError("model file is empty or lacks a header");
    NgramModel model(alpha_override > 0.0 ? alpha_override : alpha);
    for (const auto& [n, context, token, count] : rows) {
      Key key{kNone, kNone, kNone};
      std::vector<std::string> parts;
      if (!context.empty()) {
        std::size_t start = 0;
        while (true) {
          const auto space = context.find(' ', start);
          parts.push_back(context.substr(start, space - start));
          if (space == std::string::npos) break;
          start = space + 1;
        }
      }
      if (static_cast<int>(parts.size()) != n - 1)
        throw FormatError("model: context length does not match order for '" + token + "'");
      for (std::size_t i = 0; i < parts.size(); ++i)
        key[2 - parts.size() + i] = model.Intern(parts[i]);
      key[2] = model.Intern(token);
      model.AddCount(key, count);
    }
    if (declared_vocab >= 0 && static_cast<std::size_t>(declared_vocab) != model.vocab_)
      throw FormatError("model: header vocab " + std::to_string(declared_vocab) +
                        " does not match " + std::to_string(model.vocab_) + " word types");
    if (model.sentences_ == 0) throw FormatError("model: no <s> count");
    return model;
  }

 private:
  using Key = std::array<Id, 3>;  // right-aligned; unused slots are kNone

  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL;
      for (Id id : k) h = (h ^ id) * 0x100000001b3ULL;
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  Id Intern(std::string_view token) {
    auto [it, inserted] = ids_.try_emplace(std::string(token), static_cast<Id>(words_.size()));
    if (inserted) words_.emplace_back(token);
    return it->second;
  }

  void AddNgram(std::initializer_list<Id> ids) {
    Key key{kNone, kNone, kNone};
    std::size_t i = 3 - ids.size();
    for (Id id : ids) key[i++] = id;
    AddCount(key, 1);
  }

  void AddCount(const Key& key, std::uint64_t count) {
    if (count == 0) return;
    auto& slot = counts_[key];
    const bool unigram = key[0] == kNone && key[1] == kNone;
    if (unigram) {
      if (slot == 0 && key[2] != kBos && key[2] != kEos) ++vocab_;
      if (key[2] == kBos) {
        sentences_ += count;
      } else {
        events_ += count;
      }
    }
    slot += count;
  }

  std::uint64_t Lookup(const Key& key) const {
    const auto it = counts_.find(key);
    return it == counts_.end() ? 0 : it->second;
  }

  static std::vector<std::string> SplitTabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      out.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    return out;
  }

  template <typename Fail>
  static std::uint64_t ParseCount(const std::string& text, const Fail& fail) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw fail("bad count '" + text + "'");
    return value;
  }

  template <typename Fail>
  static double ParseDouble(const std::string& text, const Fail& fail) {
    double value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw fail("bad number '" + text + "'");
    return value;
  }

  double alpha_;
  std::unordered_map<std::string, Id> ids_;
  std::vector<std::string> words_;
  std::unordered_map<Key, std::uint64_t, KeyHash> counts_;
  std::size_t vocab_ = 0;
  std::uint64_t events_ = 0;
  std::uint64_t sentences_ = 0;
};

}  // namespace yadr

#endif  // YADR_NGRAM_HPP_
