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

// JSON views of the pipeline's result types.

#ifndef YADR_REPORT_HPP_
#define YADR_REPORT_HPP_

#include <cstdio>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "yadr/corpus.hpp"
#include "yadr/decode.hpp"
#include "yadr/error_analysis.hpp"
#include "yadr/lexicon.hpp"
#include "yadr/metrics.hpp"
#include "yadr/ocr.hpp"

namespace yadr {

using Json = nlohmann::json;

/// Dumps with invalid UTF-8 replaced rather than throwing.
inline std::string DumpJson(const Json& j, int indent = -1) {
  return j.dump(indent, ' ', false, Json::error_handler_t::replace);
}

inline Json ToJson(const Restoration& r) {
  Json tokens = Json::array();
  for (const RestoredToken& t : r.tokens) {
    Json alternatives = Json::array();
    for (const Alternative& a : t.alternatives)
      alternatives.push_back({{"form", a.form}, {"score", a.score}});
    tokens.push_back({{"source", t.source},
                      {"best", t.best},
                      {"passthrough", t.passthrough},
                      {"alternatives", std::move(alternatives)}});
  }
  const Tokens output = r.Output();
  return {{"restored", JoinTokens(output)}, {"log_prob", r.log_prob}, {"tokens", std::move(tokens)}};
}

inline Json ToJson(const BleuScore& b) {
  return {{"bleu", b.bleu},
          {"precisions", b.precisions},
          {"matches", b.matches},
          {"totals", b.totals},
          {"brevity_penalty", b.brevity_penalty},
          {"ratio", b.Ratio()},
          {"hypothesis_length", b.hypothesis_length},
          {"reference_length", b.reference_length}};
}

inline Json ToJson(const WerResult& w) {
  return {{"wer", w.wer},
          {"errors", w.errors},
          {"substitutions", w.substitutions},
          {"insertions", w.insertions},
          {"deletions", w.deletions},
          {"reference_words", w.reference_words}};
}

inline Json ToJson(const ErrorAnalysis& e) {
  Json categories = Json::object();
  for (TokenCategory c : kAllCategories)
    categories[std::string(CategoryName(c))] = {{"count", e.Count(c)}, {"rate", e.Rate(c)}};
  Json misaligned = Json::array();
  for (const LineDiagnostic& d : e.misaligned)
    misaligned.push_back({{"line", d.line},
                          {"source_tokens", d.source_tokens},
                          {"reference_tokens", d.reference_tokens},
                          {"hypothesis_tokens", d.hypothesis_tokens}});
  return {{"tokens", e.Total()},
          {"categories", std::move(categories)},
          {"robustness", {{"tokens", e.robustness_tokens}, {"correct", e.robustness_correct}}},
          {"misaligned_lines", std::move(misaligned)}};
}

inline Json ToJson(const AmbiguityReport& a) {
  Json histogram = Json::object();
  for (const auto& [variants, keys] : a.variant_count_histogram)
    histogram[std::to_string(variants)] = keys;
  return {{"keys", a.keys},
          {"ambiguous_keys", a.ambiguous_keys},
          {"token_occurrences", a.token_occurrences},
          {"ambiguous_occurrences", a.ambiguous_occurrences},
          {"ambiguous_fraction", a.ambiguous_fraction},
          {"mean_variants_per_token", a.mean_variants_per_token},
          {"variant_count_histogram", std::move(histogram)}};
}

inline Json ToJson(const SourceStats& s) {
  return {{"label", s.label},
          {"lines", s.lines},
          {"words", s.words},
          {"vocab_diacritized", s.vocab_diacritized},
          {"vocab_stripped", s.vocab_stripped}};
}

inline Json ToJson(const CorpusStats& c) {
  Json sources = Json::array();
  for (const SourceStats& s : c.sources) sources.push_back(ToJson(s));
  return {{"sources", std::move(sources)}, {"total", ToJson(c.total)}};
}

/// Scores of one hypothesis corpus against its references.
struct EvalReport {
  BleuScore bleu;
  WerResult wer;
  std::optional<double> perplexity;  // only when a model scored the hypotheses
  std::optional<ErrorAnalysis> errors;
};

inline EvalReport Evaluate(std::span<const Tokens> sources, std::span<const Tokens> references,
                           std::span<const Tokens> hypotheses, const Lexicon* lexicon = nullptr) {
  EvalReport report{Bleu(references, hypotheses), Wer(references, hypotheses), std::nullopt,
                    std::nullopt};
  if (!sources.empty()) report.errors = AnalyzeErrors(sources, references, hypotheses, lexicon);
  return report;
}

/// Perplexity of the model on its own output. Every line contributes its
/// tokens plus the end-of-sentence event.
inline double CorpusPerplexity(const NgramModel& model, std::span<const Tokens> hypotheses) {
  FixedLog total = 0;
  long long events = 0;
  for (const Tokens& line : hypotheses) {
    total += model.SequenceLogProbFixed(line);
    events += static_cast<long long>(line.size()) + 1;
  }
  return Perplexity(FromFixedLog(total), events);
}

inline Json ToJson(const EvalReport& r) {
  Json j = {{"bleu", ToJson(r.bleu)}, {"wer", ToJson(r.wer)}};
  j["perplexity"] = r.perplexity ? Json(*r.perplexity) : Json(nullptr);
  if (r.errors) j["error_analysis"] = ToJson(*r.errors);
  return j;
}

/// The human-readable table.
inline void WriteEvalTable(const EvalReport& r, std::ostream& out) {
  out << r.bleu.ToString() << '\n' << r.wer.ToString() << '\n';
  if (r.perplexity) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "PPL %.4f\n", *r.perplexity);
    out << buf;
  }
  if (!r.errors) return;
  const ErrorAnalysis& e = *r.errors;
  for (TokenCategory c : kAllCategories) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-26s %8zu %7.2f%%\n", std::string(CategoryName(c)).c_str(),
                  e.Count(c), 100.0 * e.Rate(c));
    out << buf;
  }
  out << "robustness (digit/OOV) " << e.robustness_correct << '/' << e.robustness_tokens
      << " correct\n";
  for (const LineDiagnostic& d : e.misaligned)
    out << "line " << d.line << ": token counts differ (source " << d.source_tokens
        << ", reference " << d.reference_tokens << ", hypothesis " << d.hypothesis_tokens
        << ")\n";
}

}  // namespace yadr

#endif  // YADR_REPORT_HPP_
