// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Descriptive tables: code frequencies and per-theme sentiment
// distributions, overall and per stakeholder role.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/metrics.hpp"

namespace voicelens::report {

struct FrequencyRow {
  std::string parent_label;
  double parent_pct = 0.0;  // parent-only labels of this parent
  std::string child_label;  // empty for a parent with only parent-only labels
  double child_pct = 0.0;
  int child_count = 0;
  int parent_count = 0;
};

struct FrequencyTable {
  std::string group;  // "all" or a role group name
  int total_labels = 0;
  std::vector<FrequencyRow> rows;  // child_pct descending, ties in codebook order
};

// Percentages are 100 * count / total labels in the table's paragraphs. Only
// codes that occur get a row. Throws kUnknownLabel for labels outside `cb`.
FrequencyTable frequency_report(const LabeledCorpus& lc, const Codebook& cb);
// One table per role group present in the corpus, over that group's paragraphs.
std::vector<FrequencyTable> frequency_by_role(const LabeledCorpus& lc, const Codebook& cb,
                                              const Corpus& corpus);
std::string frequency_csv(const std::vector<FrequencyTable>& tables);

struct ThemeSentiment {
  CodeRef code;
  int paragraphs = 0;
  double positive = 0.0;
  double negative = 0.0;
  double neutral = 0.0;
};

struct SentimentTable {
  std::string group;
  std::vector<ThemeSentiment> rows;  // themes in first-appearance order
};

// For each theme, the sentiment distribution over its paragraphs that carry a
// sentiment. Themes with no such paragraph are omitted.
SentimentTable sentiment_report(const metrics::SentimentList& sentiment,
                                const LabeledCorpus& themes);
std::vector<SentimentTable> sentiment_by_role(const metrics::SentimentList& sentiment,
                                              const LabeledCorpus& themes, const Corpus& corpus);
std::string sentiment_csv(const std::vector<SentimentTable>& tables);

}  // namespace voicelens::report
