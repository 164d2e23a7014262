// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Local HTTP+JSON API over a pipeline output directory: paragraphs, runs,
// disagreement queues, an append-only adjudication log, the resulting gold
// labels and metrics recomputed against them.
//
//   GET  /paragraphs?role=<role group>
//   GET  /runs
//   GET  /runs/{id}/annotations        id is "<run_id>" or "<run_id>.<kind>"
//   GET  /disagreements?a=&b=&level=original|parent|sentiment
//   POST /adjudications
//   GET  /gold
//   GET  /metrics?machine=&gold=human|adjudicated&iters=
//
// Errors are {"code": "...", "message": "..."}.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/metrics.hpp"
#include "voicelens/text.hpp"

namespace httplib {
class Server;
}

namespace voicelens {

enum class Decision { kAcceptMachine, kAcceptHuman, kRevised };

std::string_view to_string(Decision d);
std::optional<Decision> parse_decision(std::string_view text);

struct AdjudicationRecord {
  std::string paragraph_id;
  std::vector<CodeRef> final_labels;  // 0..3
  std::optional<Sentiment> final_sentiment;
  std::string adjudicator_id;
  Decision decision = Decision::kRevised;
  std::string note;
  std::string timestamp;

  bool operator==(const AdjudicationRecord&) const = default;
};

nlohmann::ordered_json to_json(const AdjudicationRecord& r);
// Strict: labels must be {level,label} objects. Throws kParseError.
AdjudicationRecord adjudication_from_json(const nlohmann::json& j);

struct QueueItem {
  std::string paragraph_id;
  std::size_t index = 0;     // corpus position
  std::size_t distance = 0;  // |symmetric difference| (1 for a sentiment mismatch)
};

// Paragraphs whose label sets differ, largest symmetric difference first,
// ties in corpus order. Throws kShapeMismatch for unaligned inputs.
std::vector<QueueItem> disagreement_queue(const LabeledCorpus& a, const LabeledCorpus& b);
std::vector<QueueItem> disagreement_queue(const metrics::SentimentList& a,
                                          const metrics::SentimentList& b,
                                          const std::vector<std::string>& ids);

// Human labels with the latest adjudication per paragraph applied.
struct GoldState {
  AnnotationRun themes;
  AnnotationRun sentiment;
  std::set<std::string> adjudicated;
};
GoldState apply_adjudications(const AnnotationRun& human_themes,
                              const AnnotationRun& human_sentiment, const Corpus& corpus,
                              const std::vector<AdjudicationRecord>& log);

struct HttpResponse {
  int status = 200;
  std::string body;
};

class Service {
 public:
  using Query = std::multimap<std::string, std::string>;

  // Loads ingest/ and runs/ from a pipeline output directory and replays
  // adjudications.jsonl. Throws kCorruptState for missing or unreadable state.
  explicit Service(std::filesystem::path state_dir, WarningSink warn = stderr_warning);
  ~Service();

  // Routes one request; never throws.
  HttpResponse handle(const std::string& method, const std::string& path, const Query& query,
                      const std::string& body);

  // Binds and serves until stop(). Port 0 picks a free port. Throws
  // kBindFailure.
  int bind(const std::string& host, int port);
  void listen_after_bind();
  void stop();

  std::vector<AdjudicationRecord> adjudications() const;
  std::filesystem::path log_path() const { return state_dir_ / "adjudications.jsonl"; }

 private:
  nlohmann::ordered_json paragraphs(const Query& q) const;
  nlohmann::ordered_json runs() const;
  nlohmann::ordered_json annotations(const std::string& id) const;
  nlohmann::ordered_json disagreements(const Query& q) const;
  nlohmann::ordered_json adjudicate(const std::string& body);
  nlohmann::ordered_json gold() const;
  nlohmann::ordered_json metrics(const Query& q) const;

  const AnnotationRun& find_run(const std::string& id, std::optional<RunKind> kind) const;
  GoldState gold_state() const;

  std::filesystem::path state_dir_;
  WarningSink warn_;
  Corpus corpus_;
  Codebook codebook_;
  std::map<std::string, AnnotationRun> runs_;  // key "<run_id>.<kind>"
  std::vector<AdjudicationRecord> log_;
  mutable std::shared_mutex mu_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace voicelens
