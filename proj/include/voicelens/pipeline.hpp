// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end orchestration: ingest -> annotate -> harmonize -> evaluate ->
// report, driven by an INI configuration. Every stage reads its inputs from
// the output directory, so a failed run can resume after the last completed
// stage.
//
// Layout of the output directory:
//   ingest/corpus.jsonl, ingest/codebook.csv
//   runs/<run_id>.<kind>.jsonl
//   lda/model.json, lda/worksheet.csv, lda/diagnostics.csv
//   harmonized/<run_id>.<level>.csv
//   eval/<machine>_vs_<human>.json|.csv
//   report/frequency.<run_id>.csv, report/sentiment.<run_id>.csv
//   manifest.json, checkpoint.json

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "voicelens/corpus.hpp"
#include "voicelens/lda.hpp"
#include "voicelens/llm_annotator.hpp"
#include "voicelens/metrics.hpp"
#include "voicelens/text.hpp"

namespace voicelens {

inline constexpr const char* kStageNames[] = {"ingest", "annotate", "harmonize", "evaluate",
                                              "report"};

struct PipelineConfig {
  std::filesystem::path output_dir;

  std::filesystem::path corpus_path;
  std::optional<CorpusFormat> corpus_format;  // from the extension when unset
  std::filesystem::path codebook_path;
  std::optional<std::filesystem::path> human_labels_path;

  bool llm_enabled = false;
  std::string llm_provider = "mock";  // mock | http
  std::string llm_endpoint;
  llm::AnnotatorConfig llm;
  bool llm_sentiment = true;

  bool lda_enabled = false;
  lda::FitConfig lda_fit;
  int lda_min_term_count = 2;
  std::optional<std::filesystem::path> lda_label_map;
  std::vector<int> lda_search_k;
  double lda_holdout_fraction = 0.1;
  std::uint64_t lda_holdout_seed = 7;

  bool lexicon_enabled = false;
  std::filesystem::path lexicon_dir;

  metrics::EvalConfig eval;

  std::vector<std::string> stages{std::begin(kStageNames), std::end(kStageNames)};

  // Relative paths are resolved against `base_dir`. Unknown sections or keys
  // throw kParseError.
  static PipelineConfig parse(std::string_view ini_text, const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);

  // Every setting except output_dir; input paths appear as file names.
  nlohmann::ordered_json to_json() const;
};

struct PipelineOptions {
  bool resume = false;
  // Simulated failure: throws kStageFailed when this stage is about to start.
  std::optional<std::string> fail_at;
  // Replaces the provider named in the configuration.
  std::shared_ptr<llm::LlmProvider> provider;
  WarningSink warn = stderr_warning;
};

struct PipelineResult {
  std::vector<std::string> ran;
  std::vector<std::string> skipped;  // completed in an earlier, resumed run
  std::filesystem::path manifest;
};

// Throws kStageFailed (wrapping the cause) when a stage fails; the checkpoint
// then lists the stages that completed.
PipelineResult run_pipeline(const PipelineConfig& config, const PipelineOptions& options = {});

// Content digest used in the manifest. Run files are hashed with their
// timestamps cleared.
std::string artifact_digest(const std::filesystem::path& path);

}  // namespace voicelens
