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

// Parallel corpus preparation: diacritized lines in, aligned
// (stripped, diacritized) token pairs out.

#ifndef YADR_CORPUS_HPP_
#define YADR_CORPUS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "yadr/error.hpp"
#include "yadr/text.hpp"
#include "yadr/tokenize.hpp"

namespace yadr {

struct Origin {
  std::string file;
  std::size_t line = 0;  // 1-based
  friend bool operator==(const Origin&, const Origin&) = default;
};

struct ParallelPair {
  Tokens source;  // stripped
  Tokens target;  // diacritized
  Origin origin;
  bool no_diacritics = false;  // line had nothing to restore

  /// Token-for-token strip consistency.
  bool Aligned() const {
    if (source.size() != target.size()) return false;
    for (std::size_t i = 0; i < source.size(); ++i)
      if (StripDiacritics(target[i]) != source[i]) return false;
    return true;
  }
};

using ParallelCorpus = std::vector<ParallelPair>;

/// Builds the pair for one diacritized line (normalized first).
inline ParallelPair MakePair(std::string_view line, Origin origin) {
  const std::string normalized = Normalize(line);
  ParallelPair pair;
  pair.target = Tokenize(normalized);
  pair.source.reserve(pair.target.size());
  for (const std::string& token : pair.target)
    pair.source.push_back(StripDiacritics(token));
  pair.no_diacritics = pair.source == pair.target;
  pair.origin = std::move(origin);
  return pair;
}

/// One pair per non-empty line. Lines without any diacritic are kept and
/// flagged, since they are often loan words or code-switched content.
inline ParallelCorpus PrepareParallel(std::span<const std::string> lines,
                                      const std::string& file_id) {
  ParallelCorpus corpus;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    ParallelPair pair = MakePair(lines[i], {file_id, i + 1});
    if (!pair.target.empty()) corpus.push_back(std::move(pair));
  }
  return corpus;
}

inline std::vector<std::string> ReadLines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

inline std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  return ReadLines(in);
}

/// Origins carry the file name only, so seeded splits do not depend on
/// where the file lives.
inline ParallelCorpus PrepareParallelFile(const std::string& path) {
  return PrepareParallel(ReadLines(path), std::filesystem::path(path).filename().string());
}

/// Two aligned streams, one sentence per line.
inline void WriteParallel(const ParallelCorpus& corpus, std::ostream& src,
                          std::ostream& tgt) {
  for (const ParallelPair& pair : corpus) {
    src << JoinTokens(pair.source) << '\n';
    tgt << JoinTokens(pair.target) << '\n';
  }
}

/// source TAB target per line.
inline void WriteParallelTsv(const ParallelCorpus& corpus, std::ostream& out) {
  for (const ParallelPair& pair : corpus)
    out << JoinTokens(pair.source) << '\t' << JoinTokens(pair.target) << '\n';
}

// ---------------------------------------------------------------------------
// Train/dev/test split

namespace detail {

inline std::uint64_t Fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Uniform value in [0,1) determined by the seed and the pair's origin.
inline double OriginHash(const Origin& origin, std::uint64_t seed) {
  std::uint64_t h = detail::Fnv1a(origin.file, 0xcbf29ce484222325ULL ^ detail::Mix64(seed));
  h = detail::Fnv1a(std::to_string(origin.line), detail::Fnv1a("\x1f", h));
  return static_cast<double>(detail::Mix64(h) >> 11) * 0x1.0p-53;
}

struct SplitRatios {
  double train = 0.8;
  double dev = 0.1;
  double test = 0.1;
};

struct CorpusSplit {
  ParallelCorpus train;
  ParallelCorpus dev;
  ParallelCorpus test;
};

/// Deterministic partition by seeded hash of each pair's origin.
inline CorpusSplit Split(const ParallelCorpus& corpus, SplitRatios ratios,
                         std::uint64_t seed) {
  if (ratios.train < 0 || ratios.dev < 0 || ratios.test < 0 ||
      std::abs(ratios.train + ratios.dev + ratios.test - 1.0) > 1e-9)
    throw InvalidArgument("split ratios must be non-negative and sum to 1");
  CorpusSplit out;
  for (const ParallelPair& pair : corpus) {
    const double u = OriginHash(pair.origin, seed);
    if (u < ratios.train) {
      out.train.push_back(pair);
    } else if (u < ratios.train + ratios.dev) {
      out.dev.push_back(pair);
    } else {
      out.test.push_back(pair);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus statistics

struct SourceStats {
  std::string label;
  std::size_t lines = 0;
  std::size_t words = 0;
  std::size_t vocab_diacritized = 0;
  std::size_t vocab_stripped = 0;
};

struct CorpusStats {
  std::vector<SourceStats> sources;
  SourceStats total;  // vocabularies are unions over sources
};

struct LabeledCorpus {
  std::string label;
  ParallelCorpus corpus;
};

/// Word counts exclude punctuation tokens; digit tokens count as words.
inline CorpusStats ComputeCorpusStats(std::span<const LabeledCorpus> inputs) {
  const auto is_word = [](const std::string& token) {
    for (const Cluster& c : Clusters(token))
      if (IsLetter(c.base) || IsDigit(c.base)) return true;
    return false;
  };
  CorpusStats stats;
  stats.total.label = "total";
  std::set<std::string> all_diacritized, all_stripped;
  for (const LabeledCorpus& input : inputs) {
    SourceStats s;
    s.label = input.label;
    std::set<std::string> diacritized, stripped;
    for (const ParallelPair& pair : input.corpus) {
      ++s.lines;
      for (std::size_t i = 0; i < pair.target.size(); ++i) {
        if (!is_word(pair.target[i])) continue;
        ++s.words;
        diacritized.insert(pair.target[i]);
        stripped.insert(pair.source[i]);
      }
    }
    s.vocab_diacritized = diacritized.size();
    s.vocab_stripped = stripped.size();
    stats.total.lines += s.lines;
    stats.total.words += s.words;
    all_diacritized.insert(diacritized.begin(), diacritized.end());
    all_stripped.insert(stripped.begin(), stripped.end());
    stats.sources.push_back(std::move(s));
  }
  stats.total.vocab_diacritized = all_diacritized.size();
  stats.total.vocab_stripped = all_stripped.size();
  return stats;
}

}  // namespace yadr

#endif  // YADR_CORPUS_HPP_
