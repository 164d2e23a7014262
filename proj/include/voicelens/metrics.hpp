// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Machine-versus-human agreement statistics: set overlap per paragraph,
// pooled and per-code binary agreement over one-hot matrices with bootstrap
// intervals, tf-idf similarity of per-code text, and three-way sentiment
// agreement.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/execution.hpp"
#include "voicelens/harmonize.hpp"

namespace voicelens::metrics {

using LabelSets = std::vector<std::vector<CodeRef>>;

struct MetricValue {
  double value = 0.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  std::optional<int> n_boot;  // resamples that produced a value
  int skipped = 0;            // resamples where the statistic was undefined

  bool operator==(const MetricValue&) const = default;
};

nlohmann::ordered_json to_json(const MetricValue& v);

// ---- Set overlap ----------------------------------------------------------

struct HitRateOptions {
  // A paragraph with machine labels but no human labels scores 0 when true
  // and is skipped when false. Paragraphs without machine labels are always
  // skipped.
  bool count_empty_human = true;
};

// 100 * mean over eligible paragraphs of |M ∩ H| / |M|. Throws
// kLengthMismatch for unequal list sizes and kNoEligibleParagraphs.
double hit_rate(const LabelSets& machine, const LabelSets& human,
                const HitRateOptions& options = {});
double hit_rate(const LabeledCorpus& machine, const LabeledCorpus& human,
                const HitRateOptions& options = {});

// Mean hit rate over `repeats` uniform permutations of the human sets. Every
// repeat draws its own permutation from stream (seed, repeat). Throws
// kInvalidArgument for fewer than two paragraphs.
double shuffled_hit_rate(const LabelSets& machine, const LabelSets& human, std::uint64_t seed,
                         int repeats = 100, const HitRateOptions& options = {});
double shuffled_hit_rate(const LabeledCorpus& machine, const LabeledCorpus& human,
                         std::uint64_t seed, int repeats = 100,
                         const HitRateOptions& options = {});

struct Overlap {
  double simpson = 0.0;
  double dice = 0.0;
  double jaccard = 0.0;
};

// Coefficients for one pair of non-empty sets.
Overlap overlap_pair(const std::vector<CodeRef>& m, const std::vector<CodeRef>& h);
// Means over paragraphs where both sets are non-empty. Throws
// kNoEligibleParagraphs.
Overlap overlap_coefficients(const LabelSets& machine, const LabelSets& human);
Overlap overlap_coefficients(const LabeledCorpus& machine, const LabeledCorpus& human);

// ---- Binary agreement -----------------------------------------------------

struct BinaryCounts {
  long long tp = 0, fp = 0, fn = 0, tn = 0;

  long long total() const { return tp + fp + fn + tn; }
  BinaryCounts& operator+=(const BinaryCounts& o) {
    tp += o.tp, fp += o.fp, fn += o.fn, tn += o.tn;
    return *this;
  }
};

// Throws kLengthMismatch.
BinaryCounts count_binary(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// 0/0 is taken as 0 in every ratio.
Prf prf_from_counts(const BinaryCounts& c);
double accuracy_from_counts(const BinaryCounts& c);
// (p_o - p_e) / (1 - p_e); when p_e = 1 the result is 1 if p_o = 1, else 0.
double kappa_from_counts(const BinaryCounts& c);
// Balanced accuracy; nullopt when truth has a single class.
std::optional<double> auc_from_counts(const BinaryCounts& c);

// Pooled TP/FP/FN over all cells. Throws kShapeMismatch.
Prf micro_prf(const OneHotMatrix& machine, const OneHotMatrix& human);
// Unweighted mean of per-column precision, recall and F1.
Prf macro_prf(const OneHotMatrix& machine, const OneHotMatrix& human);

// Throw kLengthMismatch; auc_binary throws kSingleClassTruth.
double cohen_kappa(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth);
double auc_binary(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth);
double binary_accuracy(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth);

// ---- Bootstrap ------------------------------------------------------------

// Receives the resampled row indices and returns one value per statistic;
// NaN marks a statistic undefined on that resample.
using MultiStatistic = std::function<std::vector<double>(std::span<const std::size_t>)>;
// Single statistic. A voicelens::Error thrown inside marks the resample
// undefined.
using Statistic = std::function<double(std::span<const std::size_t>)>;

// Linear-interpolation percentile (R type 7) of a non-empty sample, q in [0,1].
double percentile(std::vector<double> sample, double q);

// Resamples n_rows rows with replacement `iters` times; resample i draws from
// stream (seed, i), so results do not depend on scheduling. Each value is the
// mean of its defined resample statistics with a 2.5/97.5 percentile interval.
// A statistic with no defined resample yields nullopt. Throws
// kInvalidArgument for n_rows < 2 or iters < 1.
std::vector<std::optional<MetricValue>> bootstrap_many(std::size_t n_rows, std::size_t n_stats,
                                                       const MultiStatistic& stat, int iters,
                                                       std::uint64_t seed,
                                                       Execution exec = Execution::kParallel);
// Throws the last statistic error if no resample is defined.
MetricValue bootstrap(std::size_t n_rows, const Statistic& stat, int iters, std::uint64_t seed,
                      Execution exec = Execution::kParallel);

struct PooledMetrics {
  MetricValue accuracy;
  MetricValue kappa;
  std::optional<MetricValue> auc;
};

// Accuracy, kappa and AUC over all cells of paragraph-resampled matrices.
PooledMetrics pooled_matrix_metrics(const OneHotMatrix& machine, const OneHotMatrix& human,
                                    int iters, std::uint64_t seed,
                                    Execution exec = Execution::kParallel);

struct CodewiseMetric {
  CodeRef code;
  int truth_positive = 0;  // human support
  int machine_positive = 0;
  MetricValue kappa;
  std::optional<MetricValue> auc;  // absent when the truth column is single-class
};

// Per-column kappa and AUC with bootstrap intervals over paragraphs.
std::vector<CodewiseMetric> codewise_metrics(const OneHotMatrix& machine, const OneHotMatrix& human,
                                             int iters, std::uint64_t seed,
                                             Execution exec = Execution::kParallel);

// ---- Text similarity ------------------------------------------------------

struct CodeSimilarity {
  CodeRef code;
  std::optional<double> cosine;  // absent when either class document is empty
};

// For each code in `universe`: cosine between tf-idf vectors of the
// concatenated texts of human-labeled and machine-labeled paragraphs. The
// idf collection is every non-empty class document; tf is the raw count and
// idf = ln((1 + N) / (1 + df)) + 1.
std::vector<CodeSimilarity> tfidf_cosine_by_code(const Corpus& corpus,
                                                 const LabeledCorpus& machine,
                                                 const LabeledCorpus& human,
                                                 const std::vector<CodeRef>& universe,
                                                 Execution exec = Execution::kParallel);

// Cosine of tf-idf vectors for two token lists against a document collection.
double tfidf_cosine(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    const std::vector<std::vector<std::string>>& collection);

// ---- Sentiment ------------------------------------------------------------

// counts[human][machine], index order Positive, Negative, Neutral.
using ConfusionMatrix3 = std::array<std::array<long long, 3>, 3>;

struct SentimentAgreement {
  ConfusionMatrix3 counts{};
  double accuracy = 0.0;
  double kappa = 0.0;
};

// Accuracy and multiclass kappa of a confusion matrix.
SentimentAgreement confusion_stats(const ConfusionMatrix3& counts);

using SentimentList = std::vector<std::optional<Sentiment>>;

// Paragraphs without a human sentiment are skipped; a missing machine
// sentiment where a human one exists throws kMissingAnnotation.
SentimentAgreement sentiment_confusion(const SentimentList& machine, const SentimentList& human,
                                       const std::vector<std::string>& ids);

struct ThemeAgreement {
  CodeRef code;
  int paragraphs = 0;
  double percent = 0.0;
};

// Per code (codebook order of first appearance in `human_themes`): percentage
// of the code's human-labeled paragraphs where both sentiments exist and agree.
std::vector<ThemeAgreement> agreement_by_theme(const SentimentList& machine,
                                               const SentimentList& human,
                                               const LabeledCorpus& human_themes);

// ---- Reports --------------------------------------------------------------

struct EvalConfig {
  int bootstrap_iters = 100;
  std::uint64_t bootstrap_seed = 2024;
  int shuffle_repeats = 100;
  std::uint64_t shuffle_seed = 2024;
  bool include_parent_only = true;  // original-level universe keeps parent-only codes
  HitRateOptions hit_rate;
  Execution exec = Execution::kParallel;
};

struct ThemeEval {
  LabelLevel level = LabelLevel::kOriginal;
  double hit_rate = 0.0;
  double shuffled_hit_rate = 0.0;
  Overlap overlap;
  Prf micro;
  Prf macro;
  PooledMetrics pooled;
  std::vector<CodewiseMetric> codewise;
  std::vector<CodeSimilarity> cosine;
};

struct SentimentEval {
  SentimentAgreement agreement;
  std::vector<ThemeAgreement> by_theme;
};

struct EvalReport {
  std::string machine_run;
  std::string human_run;
  std::string machine_source;
  nlohmann::ordered_json config;
  std::vector<ThemeEval> themes;  // one per level
  std::optional<SentimentEval> sentiment;

  std::string source_pair() const { return machine_run + "_vs_" + human_run; }
};

ThemeEval evaluate_themes(const Corpus& corpus, const Codebook& cb, const LabeledCorpus& machine,
                          const LabeledCorpus& human, LabelLevel level, const EvalConfig& config);

// Thematic evaluation at both levels, plus sentiment when both sentiment runs
// are given.
EvalReport evaluate(const Corpus& corpus, const Codebook& cb, const AnnotationRun& machine_themes,
                    const AnnotationRun& human_themes, const AnnotationRun* machine_sentiment,
                    const AnnotationRun* human_sentiment, const EvalConfig& config);

// Sentiment-only report (no thematic sections).
EvalReport evaluate_sentiment(const Corpus& corpus, const AnnotationRun& machine_sentiment,
                              const AnnotationRun& human_sentiment,
                              const AnnotationRun* human_themes, const EvalConfig& config);

nlohmann::ordered_json to_json(const EvalReport& report);
// One metric per row: metric,level,source_pair,code,value,ci_low,ci_high.
std::string to_csv(const EvalReport& report);

}  // namespace voicelens::metrics
