// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <thread>

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include "support/pipeline_fixture.hpp"
#include "support/test_support.hpp"
#include "voicelens/error.hpp"
#include "voicelens/service.hpp"
#include "voicelens/text.hpp"

using namespace voicelens;
using nlohmann::json;
using voicelens::testing::ignore_warning;
using voicelens::testing::ScratchDir;

namespace {

// Pipeline output shared by every test; each test copies it so adjudication
// logs stay independent.
const std::filesystem::path& pipeline_output() {
  static ScratchDir dir("service-state");
  static const bool done = [] {
    auto cfg = voicelens::testing::fixture_pipeline(dir.path());
    cfg.lda_search_k.clear();
    PipelineOptions o;
    o.warn = ignore_warning;
    run_pipeline(cfg, o);
    return true;
  }();
  (void)done;
  return dir.path();
}

struct State {
  ScratchDir dir{"service"};
  State() {
    std::filesystem::copy(pipeline_output(), dir.path(), std::filesystem::copy_options::recursive);
  }
};

json get(Service& s, const std::string& path, Service::Query q = {}) {
  const auto r = s.handle("GET", path, q, "");
  REQUIRE_MESSAGE(r.status == 200, r.body);
  return json::parse(r.body);
}

HttpResponse post(Service& s, const json& body) {
  return s.handle("POST", "/adjudications", {}, body.dump());
}

json adjudication(const std::string& id, json labels, const char* sentiment = nullptr) {
  json j{{"paragraph_id", id},
         {"final_labels", std::move(labels)},
         {"adjudicator_id", "coder-1"},
         {"decision", "revised"}};
  if (sentiment) j["final_sentiment"] = sentiment;
  return j;
}

}  // namespace

TEST_CASE("paragraph listing with a role filter") {
  State st;
  Service s(st.dir.path(), ignore_warning);
  CHECK(get(s, "/paragraphs").size() == 240);
  const auto educators = get(s, "/paragraphs", {{"role", "Educator"}});
  CHECK(educators.size() == 78);
  for (const auto& p : educators) CHECK(p["role_group"] == "Educator");
  CHECK(get(s, "/paragraphs", {{"role", "Administrator/Policymaker"}}).size() == 84);
  const auto bad = s.handle("GET", "/paragraphs", {{"role", "Astronaut"}}, "");
  CHECK(bad.status == 422);
  CHECK(json::parse(bad.body)["code"] == "InvalidArgument");
}

TEST_CASE("runs, annotations and routing errors") {
  State st;
  Service s(st.dir.path(), ignore_warning);
  const auto runs = get(s, "/runs");
  std::set<std::string> ids;
  for (const auto& r : runs) ids.insert(r["id"]);
  CHECK(ids.count("llm.thematic"));
  CHECK(ids.count("human.sentiment"));
  CHECK(get(s, "/runs/llm.thematic/annotations")["records"].size() == 240);
  CHECK(get(s, "/runs/lexicon/annotations")["id"] == "lexicon.sentiment");
  CHECK(s.handle("GET", "/runs/nope/annotations", {}, "").status == 404);
  CHECK(s.handle("GET", "/elsewhere", {}, "").status == 404);
  const auto missing = s.handle("GET", "/disagreements", {{"a", "llm"}}, "");
  CHECK(missing.status == 400);
  CHECK(json::parse(missing.body)["code"] == "BadRequest");
}

TEST_CASE("disagreement queue is ordered by distance") {
  State st;
  Service s(st.dir.path(), ignore_warning);
  const auto q = get(s, "/disagreements", {{"a", "llm"}, {"b", "human"}, {"level", "original"}});
  REQUIRE(q.size() > 1);
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i - 1]["distance"] >= q[i]["distance"]);
  const auto parent = get(s, "/disagreements", {{"a", "llm"}, {"b", "human"}, {"level", "parent"}});
  CHECK(parent.size() <= q.size());
  const auto sent = get(s, "/disagreements", {{"a", "llm"}, {"b", "human"}, {"level", "sentiment"}});
  for (const auto& item : sent) CHECK(item["distance"] == 1);
}

TEST_CASE("adjudication validation answers 422") {
  State st;
  Service s(st.dir.path(), ignore_warning);
  auto r = post(s, adjudication("P0001", {"Transport policy"}));
  CHECK(r.status == 422);
  CHECK(json::parse(r.body)["code"] == "UnknownLabel");
  r = post(s, adjudication("P0001", json::array(), "Mixed"));
  CHECK(r.status == 422);
  CHECK(json::parse(r.body)["code"] == "UnknownSentiment");
  r = post(s, adjudication("P9999", json::array()));
  CHECK(r.status == 422);
  r = s.handle("POST", "/adjudications", {}, "{not json");
  CHECK(r.status == 422);
  CHECK(json::parse(r.body)["code"] == "ParseError");
  auto no_decision = adjudication("P0001", json::array());
  no_decision.erase("decision");
  CHECK(post(s, no_decision).status == 422);
  CHECK(s.adjudications().empty());
  CHECK_FALSE(std::filesystem::exists(s.log_path()));
}

TEST_CASE("adjudications change gold labels and recomputed metrics") {
  State st;
  Service s(st.dir.path(), ignore_warning);
  const auto before = get(s, "/metrics", {{"machine", "llm"}, {"gold", "adjudicated"}, {"iters", "10"}});
  const auto queue = get(s, "/disagreements", {{"a", "llm"}, {"b", "adjudicated"}});
  REQUIRE(queue.size() >= 10);
  for (std::size_t i = 0; i < 10; ++i) {
    auto body = adjudication(queue[i]["paragraph_id"], queue[i]["a"]);
    body["decision"] = "accept_machine";
    const auto r = post(s, body);
    REQUIRE_MESSAGE(r.status == 201, r.body);
  }
  const auto after = get(s, "/metrics", {{"machine", "llm"}, {"gold", "adjudicated"}, {"iters", "10"}});
  CHECK(after["themes"][0]["hit_rate"].get<double>() > before["themes"][0]["hit_rate"].get<double>());
  const auto human = get(s, "/metrics", {{"machine", "llm"}, {"gold", "human"}, {"iters", "10"}});
  CHECK(human["themes"][0]["hit_rate"] == before["themes"][0]["hit_rate"]);
  CHECK(get(s, "/disagreements", {{"a", "llm"}, {"b", "adjudicated"}}).size() == queue.size() - 10);

  const auto gold = get(s, "/gold");
  int adjudicated = 0;
  for (const auto& g : gold) adjudicated += g["adjudicated"].get<bool>();
  CHECK(adjudicated == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    const auto id = queue[i]["paragraph_id"].get<std::string>();
    const auto row = std::find_if(gold.begin(), gold.end(),
                                  [&](const json& g) { return g["paragraph_id"] == id; });
    CHECK((*row)["labels"] == queue[i]["a"]);
  }
}

TEST_CASE("the adjudication log survives a restart") {
  State st;
  std::vector<AdjudicationRecord> written;
  {
    Service s(st.dir.path(), ignore_warning);
    CHECK(post(s, adjudication("P0002", {"Community"}, "Positive")).status == 201);
    CHECK(post(s, adjudication("P0002", {"parent:Governance, leadership, and community partnership"}))
              .status == 201);
    written = s.adjudications();
  }
  Service again(st.dir.path(), ignore_warning);
  CHECK(again.adjudications() == written);
  const auto gold = get(again, "/gold");
  CHECK(gold[1]["labels"][0]["level"] == "parent");
  // The later record has no sentiment, so the human sentiment stands.
  CHECK(gold[1]["sentiment"] != nullptr);
}

TEST_CASE("a torn final log line is skipped; other damage is fatal") {
  State st;
  {
    Service s(st.dir.path(), ignore_warning);
    CHECK(post(s, adjudication("P0003", {"Community"})).status == 201);
  }
  const auto log = st.dir.path() / "adjudications.jsonl";
  const auto good = read_file(log);
  write_file(log, good + "{\"paragraph_id\":\"P00");
  int warnings = 0;
  Service torn(st.dir.path(), [&](const std::string&) { ++warnings; });
  CHECK(torn.adjudications().size() == 1);
  CHECK(warnings == 1);

  write_file(log, "garbage\n" + good);
  try {
    Service broken(st.dir.path(), ignore_warning);
    FAIL("expected CorruptState");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kCorruptState);
  }
}

TEST_CASE("disagreement queues from label sets") {
  LabeledCorpus a, b;
  a.ids = b.ids = {"P1", "P2", "P3"};
  a.sets = {{CodeRef::child("A")}, {CodeRef::child("A"), CodeRef::child("B")}, {}};
  b.sets = {{CodeRef::child("A")}, {CodeRef::child("C")}, {CodeRef::child("D")}};
  const auto q = disagreement_queue(a, b);
  REQUIRE(q.size() == 2);
  CHECK(q[0].paragraph_id == "P2");
  CHECK(q[0].distance == 3);
  CHECK(q[1].paragraph_id == "P3");
  b.ids[0] = "X";
  CHECK_THROWS_AS(disagreement_queue(a, b), Error);
}

TEST_CASE("the API over a real socket") {
  State st;
  Service s(st.dir.path(), ignore_warning);
  const int port = s.bind("127.0.0.1", 0);
  std::thread server([&] { s.listen_after_bind(); });
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/paragraphs?role=Educator");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body).size() == 78);
  res = client.Post("/adjudications", adjudication("P0004", {"Nope"}).dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 422);
  res = client.Post("/adjudications", adjudication("P0004", {"Community"}).dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 201);
  s.stop();
  server.join();
  CHECK(s.adjudications().size() == 1);
}
