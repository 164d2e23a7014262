// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Annotation records shared by every labeling source (human, LLM, LDA,
// lexicon) and their JSONL persistence.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"

namespace voicelens {

enum class Sentiment { kPositive, kNegative, kNeutral };

std::string_view to_string(Sentiment s);
// Case-insensitive, whitespace-trimmed.
std::optional<Sentiment> parse_sentiment(std::string_view text);

enum class AnnotationSource { kHuman, kLlm, kLda, kLexicon };

std::string_view to_string(AnnotationSource s);
std::optional<AnnotationSource> parse_source(std::string_view text);

enum class RunKind { kThematic, kSentiment };

std::string_view to_string(RunKind k);

inline constexpr std::size_t kMaxThemeLabels = 3;

struct ThemeLabelSet {
  std::string paragraph_id;
  std::vector<CodeRef> labels;  // at most 3, no duplicates
  std::string reasoning;
  AnnotationSource source = AnnotationSource::kHuman;
  std::string run_id;
};

struct SentimentAnnotation {
  std::string paragraph_id;
  Sentiment label = Sentiment::kNeutral;
  std::string reasoning;
  AnnotationSource source = AnnotationSource::kHuman;
  std::string run_id;
};

// Removes duplicates (first occurrence wins) and truncates to three labels.
std::vector<CodeRef> compact_labels(std::vector<CodeRef> labels);

struct AnnotationRecord {
  std::string paragraph_id;
  std::vector<CodeRef> labels;
  std::optional<Sentiment> sentiment;
  std::string reasoning;
  std::string raw_text;
  std::vector<std::string> unmatched;  // labels the parser could not resolve

  bool operator==(const AnnotationRecord&) const = default;
};

struct AnnotationFailure {
  std::string paragraph_id;
  std::string error;
  std::string raw_text;

  bool operator==(const AnnotationFailure&) const = default;
};

// One labeling pass over a corpus. `config` is the producer's settings as
// JSON (annotator config, LDA hyperparameters, lexicon paths, ...).
struct AnnotationRun {
  std::string run_id;
  AnnotationSource source = AnnotationSource::kHuman;
  RunKind kind = RunKind::kThematic;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::string started_at;
  std::string finished_at;
  std::vector<AnnotationRecord> records;  // document order
  std::vector<AnnotationFailure> failures;

  const AnnotationRecord* find(std::string_view paragraph_id) const;
  std::vector<ThemeLabelSet> theme_sets() const;
  std::vector<SentimentAnnotation> sentiments() const;

  // Equality ignoring timestamps.
  bool same_content(const AnnotationRun& other) const;
};

// First line: {"type":"run_header",...config, timestamps, failures}; then one
// {"paragraph_id","labels":[{"level","label"}],"sentiment"?,"reasoning","raw_text"}
// object per annotated paragraph.
std::string run_to_jsonl(const AnnotationRun& run);
AnnotationRun run_from_jsonl(std::string_view text);
void save_run(const AnnotationRun& run, const std::filesystem::path& path);
AnnotationRun load_run(const std::filesystem::path& path);

nlohmann::ordered_json labels_to_json(const std::vector<CodeRef>& labels);
std::vector<CodeRef> labels_from_json(const nlohmann::json& j);

// Human gold labels, CSV header `paragraph_id,theme_1,theme_2,theme_3,sentiment`.
// A theme cell is a code label (child labels win over parent labels) and may
// be written "parent:<label>" or "child:<label>" to force the level. Empty
// cells are absent labels; an empty sentiment column leaves the paragraph
// without a sentiment record.
struct HumanLabels {
  AnnotationRun themes;
  AnnotationRun sentiment;
};

HumanLabels parse_human_labels(std::string_view csv_text, const Codebook& cb,
                               const std::string& run_id = "human");
HumanLabels load_human_labels(const std::filesystem::path& path, const Codebook& cb,
                              const std::string& run_id = "human");
std::string human_labels_to_csv(const AnnotationRun& themes, const AnnotationRun* sentiment,
                                const Corpus& corpus);

std::string utc_timestamp();

}  // namespace voicelens
