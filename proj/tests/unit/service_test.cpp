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

#include <atomic>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "testing.hpp"
#include "yadr/http.hpp"
#include "yadr/service.hpp"

namespace yadr {
namespace {

namespace fs = std::filesystem;

std::shared_ptr<const ModelSnapshot> Snapshot() {
  static const auto snapshot = [] {
    auto lines = testing::ReadFixture("sample_reference.txt");
    for (const std::string& l : testing::ReadFixture("corpus.txt")) lines.push_back(l);
    const ParallelCorpus corpus = PrepareParallel(lines, "train");
    return std::make_shared<const ModelSnapshot>(
        ModelSnapshot{NgramModel::Train(testing::Targets(corpus)), BuildLexicon(corpus)});
  }();
  return snapshot;
}

class FeedbackFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("yadr_service_" + std::to_string(std::random_device{}()));
    store_ = std::make_unique<FeedbackStore>(dir_ / "feedback.jsonl");
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::unique_ptr<FeedbackStore> store_;
};

TEST(RestoreServiceTest, RestoresSamplePhrase) {
  const RestoreService service(Snapshot(), nullptr);
  const ServiceResponse r = service.Restore(R"({"text": "awon obirin"})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["restored"], "àwọn obìrin");
  ASSERT_EQ(r.body["tokens"].size(), 2u);
  const Json& first = r.body["tokens"][0];
  EXPECT_EQ(first["source"], "awon");
  EXPECT_EQ(first["best"], "àwọn");
  EXPECT_EQ(first["alternatives"][0]["form"], "àwọn");
  for (std::size_t i = 1; i < first["alternatives"].size(); ++i)
    EXPECT_LE(first["alternatives"][i]["score"].get<double>(),
              first["alternatives"][i - 1]["score"].get<double>());
}

TEST(RestoreServiceTest, DigitsPassThrough) {
  const RestoreService service(Snapshot(), nullptr);
  const ServiceResponse r = service.Restore(R"({"text": "2019"})");
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body["tokens"].size(), 1u);
  EXPECT_EQ(r.body["tokens"][0]["best"], "2019");
  EXPECT_TRUE(r.body["tokens"][0]["passthrough"].get<bool>());
  EXPECT_EQ(r.body["tokens"][0]["alternatives"].size(), 1u);
}

TEST(RestoreServiceTest, RejectsBadRequests) {
  const RestoreService service(Snapshot(), nullptr, 100);
  EXPECT_EQ(service.Restore(R"({"text": ""})").status, 400);
  EXPECT_EQ(service.Restore(R"({"text": "   "})").status, 400);
  EXPECT_EQ(service.Restore("not json").status, 400);
  EXPECT_EQ(service.Restore(R"({"txt": "a"})").status, 400);
  EXPECT_EQ(service.Restore(R"({"text": 5})").status, 400);
  EXPECT_EQ(service.Restore(R"({"text": "a\u0301"})").status, 200);
  const std::string big = R"({"text": ")" + std::string(200, 'a') + R"("})";
  EXPECT_EQ(service.Restore(big).status, 413);
  EXPECT_TRUE(service.Restore(big).body.contains("error"));
}

TEST(RestoreServiceTest, MatchesInProcessDecode) {
  const RestoreService service(Snapshot(), nullptr);
  for (const std::string& line : testing::ReadFixture("sample_source.txt")) {
    const ServiceResponse r = service.Restore(DumpJson(Json{{"text", line}}));
    ASSERT_EQ(r.status, 200);
    const Restoration direct = RestoreLine(Snapshot()->model, Snapshot()->lexicon, line);
    EXPECT_EQ(r.body, ToJson(direct));
    // Deterministic across calls.
    EXPECT_EQ(service.Restore(DumpJson(Json{{"text", line}})).body, r.body);
  }
}

TEST(RestoreServiceTest, HealthReportsModel) {
  const RestoreService service(Snapshot(), nullptr);
  const ServiceResponse r = service.Health();
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["vocab"], Snapshot()->model.VocabSize());
  EXPECT_THROW(RestoreService(nullptr, nullptr), InvalidArgument);
}

//===----------------------------------------------------------------------===//
// Feedback
//===----------------------------------------------------------------------===//

TEST_F(FeedbackFixture, ValidCorrectionIsStored) {
  const RestoreService service(Snapshot(), store_.get());
  EXPECT_EQ(store_->Size(), 0u);
  const ServiceResponse r = service.Feedback(R"({"source": "gba", "served": "gbà",
      "corrected": "gbá", "choices": ["gbá"], "client_id": "t1"})");
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["status"], "ok");
  const auto records = store_->ReadAll();
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].corrected, "gbá");
  EXPECT_EQ(records[0].client_id, "t1");
  EXPECT_EQ(records[0].timestamp.size(), 20u);  // YYYY-MM-DDTHH:MM:SSZ
}

TEST_F(FeedbackFixture, InconsistentCorrectionIsRejected) {
  const RestoreService service(Snapshot(), store_.get());
  const ServiceResponse r =
      service.Feedback(R"({"source": "mo ri oko", "corrected": "mo rí ọkà"})");
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(r.body["token"], 2);
  EXPECT_NE(r.body["error"].get<std::string>().find("ọkà"), std::string::npos);
  EXPECT_EQ(service.Feedback(R"({"source": "mo", "corrected": "mo lọ"})").status, 422);
  EXPECT_EQ(service.Feedback(R"({"source": "mo", "corrected": "mọ\u0300", "choices": ["ma"]})").status,
            422);
  EXPECT_EQ(service.Feedback(R"({"source": "", "corrected": ""})").status, 422);
  EXPECT_EQ(service.Feedback(R"({"source": "mo"})").status, 400);
  EXPECT_EQ(service.Feedback(R"({"source": "mo", "corrected": 3})").status, 400);
  EXPECT_EQ(service.Feedback("{").status, 400);
  EXPECT_EQ(store_->Size(), 0u);
}

TEST(FeedbackTest, NoStoreConfigured) {
  const RestoreService service(Snapshot(), nullptr);
  EXPECT_EQ(service.Feedback(R"({"source": "mo", "corrected": "mọ\u0300"})").status, 503);
}

TEST(FeedbackTest, ValidationNormalizes) {
  FeedbackRecord record{"", "ese", "", "e\u0323se\u0300", {}, ""};
  ValidateFeedback(record);
  EXPECT_EQ(record.corrected, "ẹsè");
}

TEST_F(FeedbackFixture, ExportThreeRecords) {
  for (const char* corrected : {"mo lọ sí ọjà .", "ọmọ náà ń sùn", "ó dé ní 2019"}) {
    FeedbackRecord r{UtcTimestamp(), StripDiacritics(Normalize(corrected)), "", corrected, {}, "c"};
    ValidateFeedback(r);
    store_->Append(r);
  }
  const ParallelCorpus corpus = ExportFeedback(store_->ReadAll());
  ASSERT_EQ(corpus.size(), 3u);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_TRUE(corpus[i].Aligned());
    EXPECT_EQ(corpus[i].origin, (Origin{"feedback", i + 1}));
  }
  EXPECT_EQ(JoinTokens(corpus[1].target), "ọmọ náà ń sùn");
  EXPECT_EQ(JoinTokens(corpus[1].source), "omo naa n sun");
}

TEST_F(FeedbackFixture, StoreIsAppendOnlyUnderConcurrency) {
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&] {
      for (int i = 0; i < 25; ++i) store_->Append({"t", "gba", "", "gbà", {}, ""});
    });
  for (auto& th : threads) th.join();
  EXPECT_EQ(store_->Size(), 200u);
}

TEST(FeedbackTest, JsonRoundTrip) {
  const FeedbackRecord r{"2026-01-01T00:00:00Z", "gba", "gbà", "gbá", {"gbá"}, "c"};
  const FeedbackRecord back = FeedbackFromJson(ToJson(r));
  EXPECT_EQ(ToJson(back), ToJson(r));
  EXPECT_THROW(FeedbackFromJson(Json::array()), FormatError);
  EXPECT_THROW(FeedbackFromJson(Json{{"source", "a"}, {"corrected", "a"}, {"choices", "a"}}),
               FormatError);
}

//===----------------------------------------------------------------------===//
// Live HTTP
//===----------------------------------------------------------------------===//

TEST_F(FeedbackFixture, LiveServer) {
  const RestoreService service(Snapshot(), store_.get(), 4096);
  httplib::Server server;
  MountRoutes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread listener([&] { server.listen_after_bind(); });
  struct Stop {
    httplib::Server& server;
    std::thread& listener;
    ~Stop() {
      server.stop();
      listener.join();
    }
  } stop{server, listener};
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto health = client.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  auto restore = client.Post("/restore", R"({"text": "oko"})", "application/json");
  ASSERT_TRUE(restore);
  EXPECT_EQ(restore->status, 200);
  const Json body = Json::parse(restore->body);
  EXPECT_EQ(body, service.Restore(R"({"text": "oko"})").body);
  ASSERT_GE(body["tokens"][0]["alternatives"].size(), 2u);

  // Pick the second alternative and send it back.
  const std::string choice = body["tokens"][0]["alternatives"][1]["form"];
  const Json feedback{{"source", "oko"},
                      {"served", body["restored"]},
                      {"corrected", choice},
                      {"choices", {choice}}};
  auto ack = client.Post("/feedback", feedback.dump(), "application/json");
  ASSERT_TRUE(ack);
  EXPECT_EQ(ack->status, 200);
  ASSERT_EQ(store_->Size(), 1u);
  EXPECT_EQ(store_->ReadAll()[0].corrected, choice);
  EXPECT_EQ(StripDiacritics(choice), "oko");

  auto empty = client.Post("/restore", R"({"text": ""})", "application/json");
  ASSERT_TRUE(empty);
  EXPECT_EQ(empty->status, 400);
  auto big = client.Post("/restore", R"({"text": ")" + std::string(5000, 'a') + R"("})",
                         "application/json");
  ASSERT_TRUE(big);
  EXPECT_EQ(big->status, 413);

  std::vector<std::thread> clients;
  std::atomic<int> ok{0};
  for (int t = 0; t < 4; ++t)
    clients.emplace_back([&] {
      httplib::Client c("127.0.0.1", port);
      for (int i = 0; i < 10; ++i) {
        auto r = c.Post("/restore", R"({"text": "awon obirin"})", "application/json");
        if (r && r->status == 200 && Json::parse(r->body)["restored"] == "àwọn obìrin") ++ok;
      }
    });
  for (auto& th : clients) th.join();
  EXPECT_EQ(ok.load(), 40);
}

}  // namespace
}  // namespace yadr
