// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Latent Dirichlet allocation baseline: document-term matrix construction,
// collapsed Gibbs fitting, model-selection diagnostics, the human topic
// labeling worksheet and top-3 topic code assignment.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/execution.hpp"

namespace voicelens::lda {

const std::vector<std::string>& default_stopwords();

struct DtmOptions {
  bool lowercase = true;
  bool strip_punct = true;
  std::vector<std::string> stopwords = default_stopwords();
  int min_term_count = 2;  // total corpus count
};

struct TermCount {
  int term = 0;
  int count = 0;
  bool operator==(const TermCount&) const = default;
};

struct DocTermMatrix {
  std::vector<std::string> vocabulary;     // sorted, unique
  std::vector<std::string> doc_ids;        // aligned to docs
  std::vector<std::vector<TermCount>> docs;  // sparse rows, term ascending

  std::size_t num_docs() const { return docs.size(); }
  std::size_t vocab_size() const { return vocabulary.size(); }
  int doc_length(std::size_t d) const;
  long long total_tokens() const;
  // Dense count for (doc, term); O(row length).
  int count(std::size_t d, int term) const;
};

// Options apply in order: tokenization (word boundaries when strip_punct,
// whitespace otherwise), lowercase, stopword removal, min_term_count.
// Throws kEmptyVocabulary when nothing survives.
DocTermMatrix build_dtm(const Corpus& corpus, const DtmOptions& options);
DocTermMatrix build_dtm(const std::vector<std::string>& doc_ids,
                        const std::vector<std::string>& texts, const DtmOptions& options);

struct FitConfig {
  int num_topics = 2;
  std::optional<double> alpha;  // default 50/K
  double beta = 0.01;
  int iterations = 2000;
  int burn_in = 1000;
  int sample_lag = 10;   // iterations between posterior samples after burn-in
  int trace_every = 50;  // iterations between log p(w|z) trace points
  std::uint64_t seed = 1;

  double alpha_value() const { return alpha ? *alpha : 50.0 / num_topics; }
  void validate() const;  // throws kInvalidHyperparameter
};

class TopicModel {
 public:
  int num_topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int iterations = 0;
  int burn_in = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> vocabulary;
  std::vector<std::string> doc_ids;
  std::vector<double> phi;    // K x V, row-major
  std::vector<double> theta;  // D x K, row-major
  std::vector<double> loglik_trace;  // log p(w | z) every trace_every iterations

  std::size_t vocab_size() const { return vocabulary.size(); }
  std::size_t num_docs() const { return doc_ids.size(); }
  double phi_at(int k, std::size_t w) const { return phi[k * vocab_size() + w]; }
  double theta_at(std::size_t d, int k) const { return theta[d * num_topics + k]; }

  nlohmann::ordered_json to_json() const;
  static TopicModel from_json(const nlohmann::json& j);
};

void save_model(const TopicModel& model, const std::filesystem::path& path);
TopicModel load_model(const std::filesystem::path& path);

// Collapsed Gibbs sampling. phi/theta are posterior means over samples taken
// every sample_lag iterations after burn_in. Fully determined by config.seed.
TopicModel fit_lda(const DocTermMatrix& dtm, const FitConfig& config);

// Mean per-token log likelihood of the training tokens under phi/theta.
double train_loglik(const TopicModel& model, const DocTermMatrix& dtm);

// Document completion: in every document with at least two tokens a random
// `holdout_fraction` of tokens (at least one, never all) is removed, the model
// is fit on the rest, and each removed token w of document d scores
// log sum_k theta_dk phi_kw. Returns the mean over removed tokens.
double held_out_loglik(const FitConfig& trainer, const DocTermMatrix& dtm,
                       double holdout_fraction, std::uint64_t seed);

// Mimno coherence over each topic's top_n words (by phi):
// sum_{i>j} log((D(w_i, w_j) + 1) / D(w_j)), D = document frequency.
std::vector<double> semantic_coherence(const TopicModel& model, const DocTermMatrix& dtm,
                                       int top_n = 10,
                                       Execution exec = Execution::kParallel);

// FREX-style exclusivity, averaged over each topic's top_n words.
std::vector<double> exclusivity(const TopicModel& model, int top_n = 10,
                                double frex_weight = 0.7,
                                Execution exec = Execution::kParallel);

// Pearson dispersion of observed counts against model-expected counts,
// divided by residual degrees of freedom. Near 1 when K is adequate.
double residual_dispersion(const TopicModel& model, const DocTermMatrix& dtm);

struct DiagnosticsRow {
  int num_topics = 0;
  double heldout_loglik = 0.0;
  double residual_dispersion = 0.0;
  double mean_semantic_coherence = 0.0;
  double mean_exclusivity = 0.0;
  double train_loglik = 0.0;
};

struct SearchConfig {
  FitConfig fit;  // num_topics is overridden per K; alpha unset means 50/K per K
  double holdout_fraction = 0.1;
  std::uint64_t holdout_seed = 7;
  int top_n = 10;
  double frex_weight = 0.7;
};

// One row per K. The parallel variant fits different K concurrently and
// returns the same rows as the serial one.
std::vector<DiagnosticsRow> search_k(const DocTermMatrix& dtm, const std::vector<int>& k_list,
                                     const SearchConfig& config,
                                     Execution exec = Execution::kParallel);
std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows);

// Top n terms of topic k by phi (ties by term index); n is clamped to V.
std::vector<std::string> top_words(const TopicModel& model, int k, int n = 10);
// Top n documents by theta_{., k}; ties by document index.
std::vector<std::string> top_docs(const TopicModel& model, int k, int n = 20);

struct TopicLabel {
  std::optional<CodeRef> label;
  std::optional<int> coherence_rating;  // 1..4
  std::string rationale;
};

struct TopicLabelMap {
  std::map<int, TopicLabel> topics;
  const TopicLabel* find(int topic) const;
};

// CSV `topic_id,top_words,top_doc_ids,label_level,label,coherence_rating,rationale`
// with empty rating/label fields for a human to fill in. Word and doc lists
// are ';'-separated.
std::string labeling_worksheet(const TopicModel& model, int n_words = 10, int n_docs = 20);
// Reads a completed worksheet. Rows with an empty label stay unlabeled.
// Throws kUnknownLabel for labels outside the codebook and kInvalidArgument
// for ratings outside 1..4.
TopicLabelMap parse_label_map(std::string_view csv_text, const Codebook& cb);

// The three highest-theta topics of document `doc` (ties by topic index),
// mapped through the label map; unlabeled topics are dropped and duplicates
// removed.
ThemeLabelSet assign_topics(const TopicModel& model, const TopicLabelMap& labels,
                            std::size_t doc, const std::string& run_id = "lda");
AnnotationRun assign_all(const TopicModel& model, const TopicLabelMap& labels,
                         const std::string& run_id = "lda");

}  // namespace voicelens::lda
