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

// yadr command-line driver. Data goes to stdout or the named output file,
// diagnostics to stderr. Exit status: 0 ok, 1 operation failed, 2 usage.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>

#include "yadr/http.hpp"
#include "yadr/yadr.hpp"

namespace {

using namespace yadr;

enum class Format { kTsv, kJson };

// Options shared by several subcommands.
struct Common {
  std::string model;
  std::string lexicon;
  double alpha = 0.0;  // 0: keep the value stored in the model
  double threshold = 0.9;
  std::uint64_t seed = 42;
  Format format = Format::kTsv;
  std::string output;
};

/// stdout unless a path was given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw IoError("cannot write " + path);
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> ReadInput(const std::string& path) {
  if (path.empty() || path == "-") return ReadLines(std::cin);
  return ReadLines(path);
}

ParallelCorpus PrepareFiles(const std::vector<std::string>& paths) {
  ParallelCorpus corpus;
  for (const std::string& path : paths) {
    ParallelCorpus part = path == "-" ? PrepareParallel(ReadLines(std::cin), "-")
                                      : PrepareParallelFile(path);
    for (ParallelPair& pair : part) corpus.push_back(std::move(pair));
  }
  return corpus;
}

NgramModel LoadModel(const Common& c) {
  if (c.model.empty()) throw InvalidArgument("--model is required");
  std::ifstream in(c.model, std::ios::binary);
  if (!in) throw IoError("cannot read model " + c.model);
  return NgramModel::ReadTsv(in, c.alpha);
}

Lexicon LoadLexicon(const std::string& path) {
  if (path.empty()) throw InvalidArgument("--lexicon is required");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read lexicon " + path);
  return Lexicon::ReadTsv(in);
}

CharMapTable LoadRules(const std::string& path) {
  if (path.empty()) return CharMapTable::Default();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read rule table " + path);
  return CharMapTable::ReadTsv(in);
}

std::vector<Tokens> TokenizeLines(const std::vector<std::string>& lines) {
  std::vector<Tokens> out;
  out.reserve(lines.size());
  for (const std::string& line : lines) out.push_back(Tokenize(Normalize(line)));
  return out;
}

void AddFormat(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"tsv", Format::kTsv}, {"json", Format::kJson}}));
}

// ---------------------------------------------------------------------------
// Subcommands

void RunStrip(const std::string& input, const Common& c) {
  Output out(c.output);
  std::size_t line_no = 0;
  for (const std::string& line : ReadInput(input)) {
    ++line_no;
    std::vector<StripWarning> warnings;
    out.get() << StripDiacritics(Normalize(line), &warnings) << '\n';
    for (const StripWarning& w : warnings)
      std::cerr << "warning: line " << line_no << ": orphan mark dropped at byte " << w.offset
                << '\n';
  }
}

void RunPrepare(const std::vector<std::string>& inputs, const std::string& src_path,
                const std::string& tgt_path, const Common& c) {
  const ParallelCorpus corpus = PrepareFiles(inputs);
  if (!src_path.empty() || !tgt_path.empty()) {
    if (src_path.empty() || tgt_path.empty())
      throw InvalidArgument("--source-out and --target-out go together");
    Output src(src_path), tgt(tgt_path);
    WriteParallel(corpus, src.get(), tgt.get());
    return;
  }
  Output out(c.output);
  if (c.format == Format::kTsv) {
    WriteParallelTsv(corpus, out.get());
    return;
  }
  for (const ParallelPair& pair : corpus)
    out.get() << DumpJson({{"source", JoinTokens(pair.source)},
                           {"target", JoinTokens(pair.target)},
                           {"file", pair.origin.file},
                           {"line", pair.origin.line}})
              << '\n';
}

void RunLexicon(const std::vector<std::string>& inputs, const Common& c) {
  Output out(c.output);
  BuildLexicon(PrepareFiles(inputs)).WriteTsv(out.get());
}

void RunAmbiguity(const std::vector<std::string>& inputs, const Common& c) {
  const ParallelCorpus corpus = PrepareFiles(inputs);
  const Lexicon lexicon = c.lexicon.empty() ? BuildLexicon(corpus) : LoadLexicon(c.lexicon);
  const AmbiguityReport report = ComputeAmbiguity(lexicon, corpus);
  Output out(c.output);
  if (c.format == Format::kJson) {
    out.get() << DumpJson(ToJson(report), 2) << '\n';
    return;
  }
  std::ostream& os = out.get();
  os << "keys\t" << report.keys << '\n'
     << "ambiguous_keys\t" << report.ambiguous_keys << '\n'
     << "token_occurrences\t" << report.token_occurrences << '\n'
     << "ambiguous_occurrences\t" << report.ambiguous_occurrences << '\n'
     << "ambiguous_fraction\t" << report.ambiguous_fraction << '\n'
     << "mean_variants_per_token\t" << report.mean_variants_per_token << '\n';
  for (const auto& [variants, keys] : report.variant_count_histogram)
    os << "variants=" << variants << '\t' << keys << '\n';
}

void RunSplit(const std::vector<std::string>& inputs, const std::vector<double>& ratios,
              const std::string& out_dir, const Common& c) {
  if (ratios.size() != 3) throw InvalidArgument("--ratios needs three values");
  const CorpusSplit split = Split(PrepareFiles(inputs), {ratios[0], ratios[1], ratios[2]}, c.seed);
  std::filesystem::create_directories(out_dir);
  const auto write = [&](const ParallelCorpus& part, const std::string& name) {
    Output src((std::filesystem::path(out_dir) / (name + ".src")).string());
    Output tgt((std::filesystem::path(out_dir) / (name + ".tgt")).string());
    WriteParallel(part, src.get(), tgt.get());
  };
  write(split.train, "train");
  write(split.dev, "dev");
  write(split.test, "test");
  std::cout << "train\t" << split.train.size() << "\ndev\t" << split.dev.size() << "\ntest\t"
            << split.test.size() << '\n';
}

void RunTrain(const std::vector<std::string>& inputs, const Common& c) {
  if (c.model.empty()) throw InvalidArgument("--model (output path) is required");
  const ParallelCorpus corpus = PrepareFiles(inputs);
  std::vector<Tokens> sentences;
  sentences.reserve(corpus.size());
  for (const ParallelPair& pair : corpus) sentences.push_back(pair.target);
  const NgramModel model =
      NgramModel::Train(sentences, c.alpha > 0.0 ? c.alpha : NgramModel::kDefaultAlpha);
  {
    Output out(c.model);
    model.WriteTsv(out.get());
  }
  if (!c.lexicon.empty()) {
    Output out(c.lexicon);
    BuildLexicon(corpus).WriteTsv(out.get());
  }
  std::cerr << "trained on " << model.SentenceCount() << " sentences, vocabulary "
            << model.VocabSize() << '\n';
}

void RunRestore(const std::string& input, bool unigram, const Common& c) {
  const Lexicon lexicon = LoadLexicon(c.lexicon);
  std::optional<NgramModel> model;
  if (!unigram) model = LoadModel(c);
  Output out(c.output);
  for (const std::string& line : ReadInput(input)) {
    const Restoration r = unigram ? RestoreUnigram(lexicon, Tokenize(Normalize(line)))
                                  : RestoreLine(*model, lexicon, line);
    if (c.format == Format::kJson) {
      out.get() << DumpJson(ToJson(r)) << '\n';
    } else {
      out.get() << JoinTokens(r.Output()) << '\n';
    }
  }
}

void RunEvaluate(const std::string& ref_path, const std::string& hyp_path,
                 const std::string& src_path, const Common& c) {
  const auto refs = TokenizeLines(ReadLines(ref_path));
  const auto hyps = TokenizeLines(ReadLines(hyp_path));
  std::vector<Tokens> sources;
  if (!src_path.empty()) sources = TokenizeLines(ReadLines(src_path));
  std::optional<Lexicon> lexicon;
  if (!c.lexicon.empty()) lexicon = LoadLexicon(c.lexicon);
  EvalReport report = Evaluate(sources, refs, hyps, lexicon ? &*lexicon : nullptr);
  if (!c.model.empty()) report.perplexity = CorpusPerplexity(LoadModel(c), hyps);
  Output out(c.output);
  if (c.format == Format::kJson) {
    out.get() << DumpJson(ToJson(report), 2) << '\n';
  } else {
    WriteEvalTable(report, out.get());
  }
}

void RunOcrMap(const std::string& input, const std::string& rules, const Common& c) {
  const CharMapTable table = LoadRules(rules);
  Output out(c.output);
  std::size_t line_no = 0;
  for (const std::string& line : ReadInput(input)) {
    ++line_no;
    const MapResult r = MapSuperset(table, line);
    if (c.format == Format::kJson) {
      Json log = Json::array();
      for (const Substitution& s : r.log)
        log.push_back({{"offset", s.offset},
                       {"from", s.from},
                       {"to", s.to ? Json(*s.to) : Json(nullptr)},
                       {"implicit", s.implicit}});
      out.get() << DumpJson({{"line", line_no}, {"text", r.text}, {"log", log}}) << '\n';
      continue;
    }
    out.get() << r.text << '\n';
    for (const Substitution& s : r.log)
      std::cerr << "line " << line_no << " byte " << s.offset << ": " << s.from << " -> "
                << (s.to ? *s.to : std::string("FLAG")) << '\n';
  }
}

void RunTriage(const std::vector<std::string>& documents, const std::string& queue_dir,
               const std::string& rules, const Common& c) {
  if (queue_dir.empty()) throw InvalidArgument("--queue is required");
  const CharMapTable table = LoadRules(rules);
  const Lexicon lexicon = c.lexicon.empty() ? Lexicon() : LoadLexicon(c.lexicon);
  ReviewQueue queue(queue_dir);
  Output out(c.output);
  std::size_t accepted = 0, queued = 0;
  for (const std::string& path : documents) {
    const TriageResult r = Triage(LoadDocument(path), table, lexicon, {c.threshold, {}});
    for (const AcceptedLine& line : r.accepted) out.get() << line.text << '\n';
    queue.Append(r.queued);
    accepted += r.accepted.size();
    queued += r.queued.size();
  }
  std::cerr << "accepted " << accepted << ", queued " << queued << '\n';
}

httplib::Server* g_server = nullptr;

void RunServe(const std::string& host, int port, const std::string& feedback_path,
              const std::string& static_dir, std::size_t max_bytes, const Common& c) {
  auto snapshot = std::make_shared<const ModelSnapshot>(
      ModelSnapshot{LoadModel(c), LoadLexicon(c.lexicon)});
  std::optional<FeedbackStore> store;
  if (!feedback_path.empty()) store.emplace(feedback_path);
  const RestoreService service(snapshot, store ? &*store : nullptr, max_bytes);
  httplib::Server server;
  MountRoutes(server, service, static_dir);
  const int bound = port == 0 ? server.bind_to_any_port(host) : (server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  std::cout << "listening on http://" << host << ':' << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, [](int) { if (g_server) g_server->stop(); });
  std::signal(SIGTERM, [](int) { if (g_server) g_server->stop(); });
  server.listen_after_bind();
  g_server = nullptr;
}

void RunStats(const std::vector<std::string>& inputs, const Common& c) {
  std::vector<LabeledCorpus> labeled;
  for (const std::string& path : inputs)
    labeled.push_back({std::filesystem::path(path).filename().string(), PrepareFiles({path})});
  const CorpusStats stats = ComputeCorpusStats(labeled);
  Output out(c.output);
  if (c.format == Format::kJson) {
    out.get() << DumpJson(ToJson(stats), 2) << '\n';
    return;
  }
  out.get() << "source\tlines\twords\tvocab_diacritized\tvocab_stripped\n";
  std::vector<SourceStats> rows = stats.sources;
  rows.push_back(stats.total);
  for (const SourceStats& s : rows)
    out.get() << s.label << '\t' << s.lines << '\t' << s.words << '\t' << s.vocab_diacritized
              << '\t' << s.vocab_stripped << '\n';
}

void RunExportFeedback(const std::string& feedback_path, const std::string& src_path,
                       const std::string& tgt_path, const Common& c) {
  const ParallelCorpus corpus = ExportFeedback(FeedbackStore::Read(feedback_path));
  if (!src_path.empty() || !tgt_path.empty()) {
    if (src_path.empty() || tgt_path.empty())
      throw InvalidArgument("--source-out and --target-out go together");
    Output src(src_path), tgt(tgt_path);
    WriteParallel(corpus, src.get(), tgt.get());
  } else {
    Output out(c.output);
    WriteParallelTsv(corpus, out.get());
  }
  std::cerr << "exported " << corpus.size() << " pairs\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yorùbá diacritic restoration toolkit"};
  app.require_subcommand(1);
  Common c;

  // Every subcommand registers its action here; only the parsed one runs.
  std::function<void()> action;
  const auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("-o,--output", c.output, "Output file (default stdout)");
    return cmd;
  };

  std::string input;
  std::vector<std::string> inputs;
  std::string source_out, target_out;

  auto* strip = sub("strip", "Remove tone marks and underdots from each line");
  strip->add_option("input", input, "Input file (default stdin)");
  strip->callback([&] { action = [&] { RunStrip(input, c); }; });

  auto* prepare = sub("prepare", "Build (stripped, diacritized) sentence pairs");
  prepare->add_option("inputs", inputs, "Diacritized text files")->required();
  prepare->add_option("--source-out", source_out, "Write stripped side here");
  prepare->add_option("--target-out", target_out, "Write diacritized side here");
  AddFormat(prepare, c);
  prepare->callback([&] { action = [&] { RunPrepare(inputs, source_out, target_out, c); }; });

  auto* lexicon = sub("lexicon", "Count diacritized variants per stripped word");
  lexicon->add_option("inputs", inputs, "Diacritized text files")->required();
  lexicon->callback([&] { action = [&] { RunLexicon(inputs, c); }; });

  auto* ambiguity = sub("ambiguity", "Report how ambiguous stripped words are");
  ambiguity->add_option("inputs", inputs, "Diacritized text files")->required();
  ambiguity->add_option("--lexicon", c.lexicon, "Lexicon TSV (default: built from inputs)");
  AddFormat(ambiguity, c);
  ambiguity->callback([&] { action = [&] { RunAmbiguity(inputs, c); }; });

  std::vector<double> ratios{0.8, 0.1, 0.1};
  std::string out_dir;
  auto* split = sub("split", "Deterministic train/dev/test split");
  split->add_option("inputs", inputs, "Diacritized text files")->required();
  split->add_option("--seed", c.seed, "Hash seed")->capture_default_str();
  split->add_option("--ratios", ratios, "train dev test fractions")->expected(3)->delimiter(',');
  split->add_option("--out-dir", out_dir, "Directory for {train,dev,test}.{src,tgt}")->required();
  split->callback([&] { action = [&] { RunSplit(inputs, ratios, out_dir, c); }; });

  auto* train = sub("train", "Train the trigram model (and optionally the lexicon)");
  train->add_option("inputs", inputs, "Diacritized text files")->required();
  train->add_option("--model", c.model, "Model TSV to write")->required();
  train->add_option("--lexicon", c.lexicon, "Lexicon TSV to write");
  train->add_option("--alpha", c.alpha, "Backoff factor in (0,1)");
  train->callback([&] { action = [&] { RunTrain(inputs, c); }; });

  bool unigram = false;
  auto* restore = sub("restore", "Restore diacritics line by line");
  restore->add_option("input", input, "Undiacritized text (default stdin)");
  restore->add_option("--model", c.model, "Model TSV");
  restore->add_option("--lexicon", c.lexicon, "Lexicon TSV")->required();
  restore->add_option("--alpha", c.alpha, "Override the model's backoff factor");
  restore->add_flag("--unigram", unigram, "Most frequent variant per word, no model");
  AddFormat(restore, c);
  restore->callback([&] {
    if (!unigram && c.model.empty()) throw CLI::RequiredError("--model (or --unigram)");
    action = [&] { RunRestore(input, unigram, c); };
  });

  std::string ref_path, hyp_path, src_path;
  auto* evaluate = sub("evaluate", "BLEU, WER, perplexity and error analysis");
  evaluate->add_option("--ref", ref_path, "Reference file")->required();
  evaluate->add_option("--hyp", hyp_path, "Hypothesis file")->required();
  evaluate->add_option("--source", src_path, "Undiacritized source file (enables error analysis)");
  evaluate->add_option("--model", c.model, "Model TSV (enables perplexity)");
  evaluate->add_option("--lexicon", c.lexicon, "Lexicon TSV (enables OOV flags)");
  evaluate->add_option("--alpha", c.alpha, "Override the model's backoff factor");
  AddFormat(evaluate, c);
  evaluate->callback([&] { action = [&] { RunEvaluate(ref_path, hyp_path, src_path, c); }; });

  std::string rules;
  auto* ocr_map = sub("ocr-map", "Map OCR superset characters onto the inventory");
  ocr_map->add_option("input", input, "OCR text (default stdin)");
  ocr_map->add_option("--rules", rules, "Rule table TSV (default: built-in)");
  AddFormat(ocr_map, c);
  ocr_map->callback([&] { action = [&] { RunOcrMap(input, rules, c); }; });

  std::string queue_dir;
  auto* triage = sub("triage", "Accept clean OCR lines, queue the rest for review");
  triage->add_option("documents", inputs, "OCR documents")->required();
  triage->add_option("--queue", queue_dir, "Review queue directory")->required();
  triage->add_option("--lexicon", c.lexicon, "Lexicon TSV for the coverage score");
  triage->add_option("--rules", rules, "Rule table TSV (default: built-in)");
  triage->add_option("--threshold", c.threshold, "Quality threshold in [0,1]")
      ->capture_default_str();
  triage->callback([&] { action = [&] { RunTriage(inputs, queue_dir, rules, c); }; });

  std::string host = "127.0.0.1", feedback_path, static_dir;
  int port = 8080;
  std::size_t max_bytes = RestoreService::kDefaultMaxBytes;
  auto* serve = sub("serve", "HTTP restoration service");
  serve->add_option("--model", c.model, "Model TSV")->required();
  serve->add_option("--lexicon", c.lexicon, "Lexicon TSV")->required();
  serve->add_option("--alpha", c.alpha, "Override the model's backoff factor");
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port, "0 picks a free port")->capture_default_str();
  serve->add_option("--feedback", feedback_path, "Feedback JSONL store");
  serve->add_option("--static", static_dir, "Directory served at /");
  serve->add_option("--max-bytes", max_bytes, "Request size limit")->capture_default_str();
  serve->callback([&] {
    action = [&] { RunServe(host, port, feedback_path, static_dir, max_bytes, c); };
  });

  auto* stats = sub("stats", "Per-file corpus statistics");
  stats->add_option("inputs", inputs, "Diacritized text files")->required();
  AddFormat(stats, c);
  stats->callback([&] { action = [&] { RunStats(inputs, c); }; });

  auto* inventory = sub("inventory", "Print the diacritic inventory as TSV");
  inventory->callback([&] {
    action = [&] {
      Output out(c.output);
      WriteInventoryTsv(out.get());
    };
  });

  auto* export_feedback = sub("export-feedback", "Turn stored corrections into sentence pairs");
  export_feedback->add_option("--feedback", feedback_path, "Feedback JSONL store")->required();
  export_feedback->add_option("--source-out", source_out, "Write stripped side here");
  export_feedback->add_option("--target-out", target_out, "Write diacritized side here");
  export_feedback->callback([&] {
    action = [&] { RunExportFeedback(feedback_path, source_out, target_out, c); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    action();
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout.flush();
  return std::cout ? 0 : 1;
}
