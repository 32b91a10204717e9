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

// Transport-independent request handling for the restoration service and
// the append-only feedback store. http.hpp binds these to HTTP routes.

#ifndef YADR_SERVICE_HPP_
#define YADR_SERVICE_HPP_

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "yadr/corpus.hpp"
#include "yadr/decode.hpp"
#include "yadr/error.hpp"
#include "yadr/lexicon.hpp"
#include "yadr/ngram.hpp"
#include "yadr/report.hpp"
#include "yadr/text.hpp"
#include "yadr/tokenize.hpp"

namespace yadr {

/// Normalize, tokenize and Viterbi-decode one line. The CLI and the
/// service both go through here.
inline Restoration RestoreLine(const NgramModel& model, const Lexicon& lexicon,
                               std::string_view line) {
  const Tokens tokens = Tokenize(Normalize(line));
  return RestoreViterbi(model, lexicon, tokens);
}

struct FeedbackRecord {
  std::string timestamp;  // ISO 8601 UTC
  std::string source;
  std::string served;
  std::string corrected;
  std::vector<std::string> choices;  // selected form per token, optional
  std::string client_id;
};

/// A correction that does not strip back to its source.
class FeedbackError : public InvalidArgument {
 public:
  FeedbackError(std::size_t token, const std::string& what)
      : InvalidArgument(what), token_(token) {}
  std::size_t token() const { return token_; }

 private:
  std::size_t token_;
};

namespace detail {

inline void CheckStripsTo(const Tokens& source, const Tokens& restored, const char* field) {
  if (source.size() != restored.size())
    throw FeedbackError(std::min(source.size(), restored.size()),
                        std::string(field) + " has " + std::to_string(restored.size()) +
                            " tokens, source has " + std::to_string(source.size()));
  for (std::size_t i = 0; i < source.size(); ++i)
    if (StripDiacritics(restored[i]) != StripDiacritics(source[i]))
      throw FeedbackError(i, std::string(field) + " token " + std::to_string(i) + " '" +
                                 restored[i] + "' does not strip to '" + source[i] + "'");
}

}  // namespace detail

/// Normalizes the text fields and checks strip consistency token by token.
inline void ValidateFeedback(FeedbackRecord& record) {
  record.source = Normalize(record.source);
  record.served = Normalize(record.served);
  record.corrected = Normalize(record.corrected);
  for (std::string& choice : record.choices) choice = Normalize(choice);
  const Tokens source = Tokenize(record.source);
  if (source.empty()) throw FeedbackError(0, "source sentence is empty");
  detail::CheckStripsTo(source, Tokenize(record.corrected), "corrected");
  if (!record.served.empty()) detail::CheckStripsTo(source, Tokenize(record.served), "served");
  if (!record.choices.empty()) detail::CheckStripsTo(source, record.choices, "choices");
}

inline Json ToJson(const FeedbackRecord& r) {
  return {{"timestamp", r.timestamp}, {"source", r.source},   {"served", r.served},
          {"corrected", r.corrected}, {"choices", r.choices}, {"client_id", r.client_id}};
}

/// Throws FormatError on missing or mistyped fields.
inline FeedbackRecord FeedbackFromJson(const Json& j) {
  if (!j.is_object()) throw FormatError("feedback record must be a JSON object");
  const auto text = [&](const char* key, bool required) -> std::string {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
      if (required) throw FormatError(std::string("feedback record lacks '") + key + "'");
      return {};
    }
    if (!it->is_string()) throw FormatError(std::string("feedback field '") + key + "' must be a string");
    return it->get<std::string>();
  };
  FeedbackRecord r;
  r.timestamp = text("timestamp", false);
  r.source = text("source", true);
  r.served = text("served", false);
  r.corrected = text("corrected", true);
  r.client_id = text("client_id", false);
  if (const auto it = j.find("choices"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw FormatError("feedback field 'choices' must be an array");
    for (const Json& c : *it) {
      if (!c.is_string()) throw FormatError("feedback choices must be strings");
      r.choices.push_back(c.get<std::string>());
    }
  }
  return r;
}

inline std::string UtcTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// JSONL file, one record per line, appended under a single lock and
/// never rewritten.
class FeedbackStore {
 public:
  explicit FeedbackStore(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  }

  void Append(const FeedbackRecord& record) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw IoError("feedback store: cannot append to " + path_.string());
    out << DumpJson(ToJson(record)) << '\n';
    out.flush();
    if (!out) throw IoError("feedback store: write failed on " + path_.string());
  }

  std::vector<FeedbackRecord> ReadAll() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return Read(path_);
  }

  std::size_t Size() const { return ReadAll().size(); }

  const std::filesystem::path& path() const { return path_; }

  static std::vector<FeedbackRecord> Read(const std::filesystem::path& path) {
    std::vector<FeedbackRecord> records;
    std::ifstream in(path, std::ios::binary);
    if (!in) return records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        records.push_back(FeedbackFromJson(Json::parse(line)));
      } catch (const Json::exception& e) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
      }
    }
    return records;
  }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
};

/// Corrected sentences as parallel pairs, ready for the corpus pipeline.
inline ParallelCorpus ExportFeedback(const std::vector<FeedbackRecord>& records) {
  ParallelCorpus corpus;
  for (std::size_t i = 0; i < records.size(); ++i) {
    ParallelPair pair = MakePair(records[i].corrected, {"feedback", i + 1});
    if (!pair.target.empty()) corpus.push_back(std::move(pair));
  }
  return corpus;
}

/// Model and lexicon loaded once and shared read-only by all requests.
struct ModelSnapshot {
  NgramModel model;
  Lexicon lexicon;
};

struct ServiceResponse {
  int status = 200;
  Json body;
};

class RestoreService {
 public:
  static constexpr std::size_t kDefaultMaxBytes = 64 * 1024;

  RestoreService(std::shared_ptr<const ModelSnapshot> snapshot, FeedbackStore* feedback,
                 std::size_t max_bytes = kDefaultMaxBytes)
      : snapshot_(std::move(snapshot)), feedback_(feedback), max_bytes_(max_bytes) {
    if (!snapshot_) throw InvalidArgument("service needs a model snapshot");
  }

  std::size_t max_bytes() const { return max_bytes_; }

  /// POST /restore {"text": ...}
  ServiceResponse Restore(std::string_view body) const {
    if (body.size() > max_bytes_) return Fail(413, "request exceeds " + std::to_string(max_bytes_) + " bytes");
    Json request;
    try {
      request = Json::parse(body);
    } catch (const Json::exception&) {
      return Fail(400, "request body is not valid JSON");
    }
    if (!request.is_object() || !request.contains("text") || !request["text"].is_string())
      return Fail(400, "request needs a string field 'text'");
    const std::string text = request["text"].get<std::string>();
    if (text.size() > max_bytes_) return Fail(413, "text exceeds " + std::to_string(max_bytes_) + " bytes");
    try {
      if (Tokenize(Normalize(text)).empty()) return Fail(400, "text is empty");
      return {200, ToJson(RestoreLine(snapshot_->model, snapshot_->lexicon, text))};
    } catch (const Error& e) {
      return Fail(400, e.what());
    }
  }

  /// POST /feedback with a FeedbackRecord object.
  ServiceResponse Feedback(std::string_view body) const {
    if (!feedback_) return Fail(503, "feedback store not configured");
    if (body.size() > max_bytes_) return Fail(413, "request exceeds " + std::to_string(max_bytes_) + " bytes");
    try {
      FeedbackRecord record = FeedbackFromJson(Json::parse(body));
      ValidateFeedback(record);
      if (record.timestamp.empty()) record.timestamp = UtcTimestamp();
      feedback_->Append(record);
      return {200, {{"status", "ok"}}};
    } catch (const FeedbackError& e) {
      ServiceResponse r = Fail(422, e.what());
      r.body["token"] = e.token();
      return r;
    } catch (const IoError& e) {
      return Fail(500, e.what());
    } catch (const Json::exception&) {
      return Fail(400, "request body is not valid JSON");
    } catch (const Error& e) {
      return Fail(400, e.what());
    }
  }

  ServiceResponse Health() const {
    return {200,
            {{"status", "ok"},
             {"vocab", snapshot_->model.VocabSize()},
             {"lexicon_keys", snapshot_->lexicon.size()}}};
  }

 private:
  static ServiceResponse Fail(int status, std::string message) {
    return {status, {{"error", std::move(message)}}};
  }

  std::shared_ptr<const ModelSnapshot> snapshot_;
  FeedbackStore* feedback_;
  std::size_t max_bytes_;
};

}  // namespace yadr

#endif  // YADR_SERVICE_HPP_
