// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// LLM-assisted deductive coding: prompt construction, a pluggable provider
// interface, tolerant parsing of structured replies, whole-corpus annotation
// and the reproducibility check.

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/text.hpp"

namespace voicelens::llm {

enum class PromptStyle { kZeroShotThematic, kCoTThematic, kSentiment };

std::string_view to_string(PromptStyle style);
std::optional<PromptStyle> parse_prompt_style(std::string_view text);
inline bool is_thematic(PromptStyle s) { return s != PromptStyle::kSentiment; }

struct AnnotatorConfig {
  std::string provider_id = "mock";
  std::string model_name = "gpt-4";
  double temperature = 0.5;
  PromptStyle style = PromptStyle::kCoTThematic;
  std::optional<std::uint64_t> seed;
  int max_retries = 2;
  int max_in_flight = 1;

  // Throws kInvalidArgument when temperature is outside [0,1] or counts are negative.
  void validate() const;
  nlohmann::ordered_json to_json() const;
  static AnnotatorConfig from_json(const nlohmann::json& j);
};

// Template placeholders, substituted positionally.
inline constexpr std::string_view kCodebookSlot = "{codebook}";
inline constexpr std::string_view kThematicTextSlot = "[[[TEXTGOHERE]]]";
inline constexpr std::string_view kSentimentTextSlot = "[TextGoHere]";

std::string_view thematic_template(PromptStyle style);
std::string_view sentiment_template();

std::string build_thematic_prompt(const Codebook& cb, const Paragraph& p, PromptStyle style);
std::string build_sentiment_prompt(const Paragraph& p);

struct ParsedThemes {
  std::vector<CodeRef> labels;
  std::string reasoning;
  std::vector<std::string> unmatched;
};

struct ParsedSentiment {
  Sentiment label = Sentiment::kNeutral;
  std::string reasoning;
};

// Finds the first JSON object in free text (plain, fenced or prose-wrapped).
std::optional<nlohmann::json> extract_json_object(std::string_view raw);

// Accepts "Parent i"/"Child i" pairs and "Theme i" strings. Throws
// kNoJsonFound or kAllLabelsUnmatched.
ParsedThemes parse_thematic_response(std::string_view raw, const Codebook& cb,
                                     const WarningSink& warn = stderr_warning);
// Throws kNoJsonFound or kUnknownSentiment.
ParsedSentiment parse_sentiment_response(std::string_view raw);

struct LlmRequest {
  std::string model_name;
  double temperature = 0.0;
  std::string prompt_text;
};

struct LlmResponse {
  std::string text;
};

// Implementations must be safe to call from several threads, or serialize
// internally. Throw Error(kProviderUnavailable) to abort a run and
// Error(kProviderError) for a retryable failure.
class LlmProvider {
 public:
  virtual ~LlmProvider() = default;
  virtual LlmResponse complete(const LlmRequest& request) = 0;
};

class FunctionProvider final : public LlmProvider {
 public:
  explicit FunctionProvider(std::function<LlmResponse(const LlmRequest&)> fn)
      : fn_(std::move(fn)) {}
  LlmResponse complete(const LlmRequest& request) override { return fn_(request); }

 private:
  std::function<LlmResponse(const LlmRequest&)> fn_;
};

// Caps concurrent requests and spaces request starts by at least
// `min_interval`.
class RateLimitedProvider final : public LlmProvider {
 public:
  RateLimitedProvider(std::shared_ptr<LlmProvider> inner, int max_in_flight,
                      std::chrono::milliseconds min_interval);
  LlmResponse complete(const LlmRequest& request) override;

 private:
  std::shared_ptr<LlmProvider> inner_;
  int max_in_flight_;
  std::chrono::milliseconds min_interval_;
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  std::chrono::steady_clock::time_point last_start_{};
};

// Deterministic stand-in for a real model. Thematic prompts: every child code
// scores the number of case-insensitive whole-word keyword occurrences in the
// paragraph; the top three nonzero codes are returned (ties by codebook
// order). Sentiment prompts: positive minus negative hits from a small word
// list.
class KeywordMockProvider final : public LlmProvider {
 public:
  explicit KeywordMockProvider(Codebook cb) : cb_(std::move(cb)) {}
  LlmResponse complete(const LlmRequest& request) override;

  std::string thematic_reply(std::string_view paragraph_text) const;
  static std::string sentiment_reply(std::string_view paragraph_text);

 private:
  Codebook cb_;
};

std::unique_ptr<LlmProvider> mock_keyword_annotator(const Codebook& cb);

// Paragraph text recovered from a prompt built by this module, or nullopt.
std::optional<std::string> paragraph_from_prompt(std::string_view prompt, PromptStyle* style);

// Counts non-overlapping, case-insensitive occurrences of `needle` in
// `haystack` that start and end on word boundaries.
int count_keyword(std::string_view haystack, std::string_view needle);

// One paragraph, retried up to config.max_retries on retryable errors.
// Returns the record or throws the last error. kProviderUnavailable is never
// retried.
AnnotationRecord annotate_paragraph(LlmProvider& provider, const Paragraph& p,
                                    const Codebook& cb, const AnnotatorConfig& config,
                                    const WarningSink& warn = stderr_warning);

AnnotationRun annotate_corpus(LlmProvider& provider, const Corpus& corpus, const Codebook& cb,
                              const AnnotatorConfig& config, std::string run_id = "llm",
                              const WarningSink& warn = stderr_warning);

// Fraction of `sample_size` randomly chosen paragraphs whose label set (or
// sentiment) is identical across `repeats` annotations.
double reproducibility_check(LlmProvider& provider, const Corpus& corpus, const Codebook& cb,
                             const AnnotatorConfig& config, std::size_t sample_size, int repeats,
                             std::uint64_t rng_seed, const WarningSink& warn = stderr_warning);

}  // namespace voicelens::llm
