// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Rule-based sentiment: lexicon valence sums with negation and booster
// adjustments, squashed into a compound score in (-1, 1) and cut into three
// classes.
//
// Heuristics implemented: a negator among the three preceding tokens scales
// the valence by -0.74 (once, however many negators there are); each booster
// among the three preceding tokens adds its increment with the sign of the
// (possibly negated) valence, damped by 0.95 at distance two and 0.9 at
// distance three. Capitalization, punctuation emphasis, "but" reweighting and
// idioms are not modeled.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "voicelens/annotation.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/execution.hpp"
#include "voicelens/text.hpp"

namespace voicelens::lexicon {

inline constexpr double kNormalizationAlpha = 15.0;
inline constexpr double kNegationScalar = -0.74;
inline constexpr double kPositiveCutoff = 0.05;
inline constexpr double kNegativeCutoff = -0.05;
inline constexpr int kWindow = 3;

struct SentimentLexicon {
  std::unordered_map<std::string, double> valence;
  std::unordered_map<std::string, double> boosters;
  std::unordered_set<std::string> negators;
};

struct ScoredSentiment {
  double compound = 0.0;
  double raw_sum = 0.0;
  int hit_count = 0;
};

// `token<TAB>number` lines for valence and boosters, one token per line for
// negators. Blank lines are skipped; tokens are lowercased. A repeated token
// overrides the earlier entry and triggers a warning. Throws kParseError with
// the file and line number on a malformed line.
SentimentLexicon parse_lexicon(std::string_view valence_tsv, std::string_view booster_tsv,
                               std::string_view negator_list,
                               const WarningSink& warn = stderr_warning);
SentimentLexicon load_lexicon(const std::filesystem::path& valence_path,
                              const std::filesystem::path& booster_path,
                              const std::filesystem::path& negator_path,
                              const WarningSink& warn = stderr_warning);
// The lexicon bundled under data/lexicon in the given directory.
SentimentLexicon load_lexicon_dir(const std::filesystem::path& dir,
                                  const WarningSink& warn = stderr_warning);

// s / sqrt(s^2 + 15).
double normalize(double raw_sum);

// Negator list membership, or any token ending in "n't".
bool is_negator(const SentimentLexicon& lex, std::string_view token);

ScoredSentiment score_tokens(const SentimentLexicon& lex, const std::vector<std::string>& tokens);
ScoredSentiment score_paragraph(const SentimentLexicon& lex, std::string_view text);

// >= 0.05 Positive, <= -0.05 Negative, Neutral otherwise.
Sentiment classify(double compound);

// Scores every paragraph; the parallel variant returns identical results.
std::vector<ScoredSentiment> score_corpus(const SentimentLexicon& lex, const Corpus& corpus,
                                          Execution exec = Execution::kParallel);

// A sentiment AnnotationRun with the compound score in each record's reasoning.
AnnotationRun annotate_corpus(const SentimentLexicon& lex, const Corpus& corpus,
                              const std::string& run_id = "lexicon",
                              Execution exec = Execution::kParallel);

}  // namespace voicelens::lexicon
