// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/lda.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>
#include <unordered_map>

#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"
#include "voicelens/random.hpp"
#include "voicelens/text.hpp"

namespace voicelens::lda {

using ojson = nlohmann::ordered_json;

const std::vector<std::string>& default_stopwords() {
  // Snowball English list.
  static const std::vector<std::string> kList = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
      "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
      "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
      "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
      "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "would",
      "should", "could", "ought", "i'm", "you're", "he's", "she's", "it's", "we're", "they're",
      "i've", "you've", "we've", "they've", "i'd", "you'd", "he'd", "she'd", "we'd", "they'd",
      "i'll", "you'll", "he'll", "she'll", "we'll", "they'll", "isn't", "aren't", "wasn't",
      "weren't", "hasn't", "haven't", "hadn't", "doesn't", "don't", "didn't", "won't",
      "wouldn't", "shan't", "shouldn't", "can't", "cannot", "couldn't", "mustn't", "let's",
      "that's", "who's", "what's", "here's", "there's", "when's", "where's", "why's", "how's",
      "a", "an", "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at",
      "by", "for", "with", "about", "against", "between", "into", "through", "during", "before",
      "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
      "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
      "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
      "nor", "not", "only", "own", "same", "so", "than", "too", "very"};
  return kList;
}

int DocTermMatrix::doc_length(std::size_t d) const {
  int n = 0;
  for (const auto& tc : docs[d]) n += tc.count;
  return n;
}

long long DocTermMatrix::total_tokens() const {
  long long n = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) n += doc_length(d);
  return n;
}

int DocTermMatrix::count(std::size_t d, int term) const {
  for (const auto& tc : docs[d]) {
    if (tc.term == term) return tc.count;
  }
  return 0;
}

DocTermMatrix build_dtm(const std::vector<std::string>& doc_ids,
                        const std::vector<std::string>& texts, const DtmOptions& options) {
  const std::set<std::string, std::less<>> stop(options.stopwords.begin(), options.stopwords.end());
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(texts.size());
  std::unordered_map<std::string, long long> totals;
  for (const auto& text : texts) {
    std::vector<std::string> toks;
    if (options.strip_punct) {
      toks = tokenize_words(text, false);
    } else {
      for (auto& t : split(text, ' ')) {
        for (auto& u : split(t, '\n')) {
          if (!trim(u).empty()) toks.emplace_back(trim(u));
        }
      }
    }
    std::vector<std::string> kept;
    for (auto& t : toks) {
      if (options.lowercase) t = to_lower_ascii(t);
      if (stop.count(to_lower_ascii(t))) continue;
      ++totals[t];
      kept.push_back(std::move(t));
    }
    tokenized.push_back(std::move(kept));
  }

  DocTermMatrix dtm;
  dtm.doc_ids = doc_ids;
  for (const auto& [term, n] : totals) {
    if (n >= options.min_term_count) dtm.vocabulary.push_back(term);
  }
  if (dtm.vocabulary.empty()) throw Error(Errc::kEmptyVocabulary, "no terms survive filtering");
  std::sort(dtm.vocabulary.begin(), dtm.vocabulary.end());
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < dtm.vocabulary.size(); ++i) {
    index.emplace(dtm.vocabulary[i], static_cast<int>(i));
  }
  for (const auto& toks : tokenized) {
    std::map<int, int> row;
    for (const auto& t : toks) {
      if (const auto it = index.find(t); it != index.end()) ++row[it->second];
    }
    std::vector<TermCount> sparse;
    for (const auto& [term, count] : row) sparse.push_back({term, count});
    dtm.docs.push_back(std::move(sparse));
  }
  return dtm;
}

DocTermMatrix build_dtm(const Corpus& corpus, const DtmOptions& options) {
  if (corpus.empty()) throw Error(Errc::kEmptyVocabulary, "empty corpus");
  std::vector<std::string> ids, texts;
  for (const auto& p : corpus.paragraphs()) {
    ids.push_back(p.id);
    texts.push_back(p.text);
  }
  return build_dtm(ids, texts, options);
}

void FitConfig::validate() const {
  if (num_topics < 1) throw Error(Errc::kInvalidHyperparameter, "K must be >= 1");
  if (!(alpha_value() > 0.0)) throw Error(Errc::kInvalidHyperparameter, "alpha must be > 0");
  if (!(beta > 0.0)) throw Error(Errc::kInvalidHyperparameter, "beta must be > 0");
  if (burn_in < 0 || iterations <= burn_in) {
    throw Error(Errc::kInvalidHyperparameter, "need iterations > burn_in >= 0");
  }
  if (sample_lag < 1) throw Error(Errc::kInvalidHyperparameter, "sample_lag must be >= 1");
}

ojson TopicModel::to_json() const {
  ojson j;
  j["num_topics"] = num_topics;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["iterations"] = iterations;
  j["burn_in"] = burn_in;
  j["seed"] = seed;
  j["vocabulary"] = vocabulary;
  j["doc_ids"] = doc_ids;
  j["phi"] = phi;
  j["theta"] = theta;
  j["loglik_trace"] = loglik_trace;
  return j;
}

TopicModel TopicModel::from_json(const nlohmann::json& j) {
  TopicModel m;
  try {
    m.num_topics = j.at("num_topics").get<int>();
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.iterations = j.at("iterations").get<int>();
    m.burn_in = j.at("burn_in").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    m.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    m.phi = j.at("phi").get<std::vector<double>>();
    m.theta = j.at("theta").get<std::vector<double>>();
    m.loglik_trace = j.value("loglik_trace", std::vector<double>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kParseError, std::string("topic model: ") + e.what());
  }
  if (m.phi.size() != m.vocabulary.size() * m.num_topics ||
      m.theta.size() != m.doc_ids.size() * m.num_topics) {
    throw Error(Errc::kParseError, "topic model: phi/theta shape mismatch");
  }
  return m;
}

void save_model(const TopicModel& model, const std::filesystem::path& path) {
  write_file(path, model.to_json().dump() + "\n");
}

TopicModel load_model(const std::filesystem::path& path) {
  const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::kParseError, path.string() + ": not JSON");
  return TopicModel::from_json(j);
}

TopicModel fit_lda(const DocTermMatrix& dtm, const FitConfig& config) {
  config.validate();
  const int K = config.num_topics;
  const std::size_t D = dtm.num_docs();
  const std::size_t V = dtm.vocab_size();
  const double alpha = config.alpha_value();
  const double beta = config.beta;
  const double vbeta = beta * static_cast<double>(V);

  std::vector<int> words;
  std::vector<std::size_t> doc_start(D + 1, 0);
  for (std::size_t d = 0; d < D; ++d) {
    doc_start[d] = words.size();
    for (const auto& tc : dtm.docs[d]) words.insert(words.end(), tc.count, tc.term);
  }
  doc_start[D] = words.size();

  Rng rng(config.seed);
  std::vector<int> z(words.size());
  std::vector<int> n_dk(D * K, 0), n_kw(K * V, 0), n_k(K, 0);
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t i = doc_start[d]; i < doc_start[d + 1]; ++i) {
      const int k = static_cast<int>(rng.below(static_cast<std::size_t>(K)));
      z[i] = k;
      ++n_dk[d * K + k];
      ++n_kw[k * V + words[i]];
      ++n_k[k];
    }
  }

  TopicModel model;
  model.num_topics = K;
  model.alpha = alpha;
  model.beta = beta;
  model.iterations = config.iterations;
  model.burn_in = config.burn_in;
  model.seed = config.seed;
  model.vocabulary = dtm.vocabulary;
  model.doc_ids = dtm.doc_ids;
  model.phi.assign(K * V, 0.0);
  model.theta.assign(D * K, 0.0);

  const auto accumulate = [&] {
    for (int k = 0; k < K; ++k) {
      const double denom = n_k[k] + vbeta;
      for (std::size_t w = 0; w < V; ++w) model.phi[k * V + w] += (n_kw[k * V + w] + beta) / denom;
    }
    for (std::size_t d = 0; d < D; ++d) {
      const double denom = static_cast<double>(doc_start[d + 1] - doc_start[d]) + K * alpha;
      for (int k = 0; k < K; ++k) model.theta[d * K + k] += (n_dk[d * K + k] + alpha) / denom;
    }
  };
  const auto log_p_w_given_z = [&] {
    double ll = K * (std::lgamma(vbeta) - static_cast<double>(V) * std::lgamma(beta));
    for (int k = 0; k < K; ++k) {
      for (std::size_t w = 0; w < V; ++w) ll += std::lgamma(n_kw[k * V + w] + beta);
      ll -= std::lgamma(n_k[k] + vbeta);
    }
    return ll;
  };

  std::vector<double> cumulative(K);
  int samples = 0;
  for (int iter = 1; iter <= config.iterations; ++iter) {
    for (std::size_t d = 0; d < D; ++d) {
      int* doc_counts = &n_dk[d * K];
      for (std::size_t i = doc_start[d]; i < doc_start[d + 1]; ++i) {
        const int w = words[i];
        int k = z[i];
        --doc_counts[k];
        --n_kw[k * V + w];
        --n_k[k];
        double total = 0.0;
        for (int kk = 0; kk < K; ++kk) {
          total += (doc_counts[kk] + alpha) * (n_kw[kk * V + w] + beta) / (n_k[kk] + vbeta);
          cumulative[kk] = total;
        }
        const double u = rng.uniform() * total;
        k = 0;
        while (k < K - 1 && cumulative[k] <= u) ++k;
        z[i] = k;
        ++doc_counts[k];
        ++n_kw[k * V + w];
        ++n_k[k];
      }
    }
    if (iter > config.burn_in && (iter - config.burn_in) % config.sample_lag == 0) {
      accumulate();
      ++samples;
    }
    if (config.trace_every > 0 && iter % config.trace_every == 0) {
      model.loglik_trace.push_back(log_p_w_given_z());
    }
  }
  if (samples == 0) {
    accumulate();
    samples = 1;
  }

  // Average, then renormalize rows so the simplex holds to rounding.
  const auto normalize_rows = [](std::vector<double>& m, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) {
      double s = 0.0;
      for (std::size_t c = 0; c < cols; ++c) s += m[r * cols + c];
      for (std::size_t c = 0; c < cols; ++c) m[r * cols + c] /= s;
    }
  };
  normalize_rows(model.phi, K, V);
  normalize_rows(model.theta, D, K);
  return model;
}

namespace {

double mixture_prob(const TopicModel& m, std::size_t d, int w) {
  double p = 0.0;
  for (int k = 0; k < m.num_topics; ++k) p += m.theta_at(d, k) * m.phi_at(k, w);
  return p;
}

std::vector<int> topic_order(const TopicModel& m, int k) {
  std::vector<int> idx(m.vocab_size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return m.phi_at(k, a) > m.phi_at(k, b); });
  return idx;
}

// 1-based ascending ranks, ties get their average rank.
std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double r = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = r;
    i = j + 1;
  }
  return ranks;
}

void check_topic(const TopicModel& m, int k) {
  if (k < 0 || k >= m.num_topics) {
    throw Error(Errc::kIndexOutOfRange, "topic " + std::to_string(k) + " of " +
                                            std::to_string(m.num_topics));
  }
}

}  // namespace

double train_loglik(const TopicModel& model, const DocTermMatrix& dtm) {
  double ll = 0.0;
  long long n = 0;
  for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
    for (const auto& tc : dtm.docs[d]) {
      ll += tc.count * std::log(mixture_prob(model, d, tc.term));
      n += tc.count;
    }
  }
  return n > 0 ? ll / static_cast<double>(n) : 0.0;
}

double held_out_loglik(const FitConfig& trainer, const DocTermMatrix& dtm,
                       double holdout_fraction, std::uint64_t seed) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 0.5)) {
    throw Error(Errc::kInvalidArgument, "holdout_fraction must be in (0, 0.5)");
  }
  Rng rng(seed);
  DocTermMatrix observed = dtm;
  std::vector<std::pair<std::size_t, int>> held;  // (doc, term)
  for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
    std::vector<int> tokens;
    for (const auto& tc : dtm.docs[d]) tokens.insert(tokens.end(), tc.count, tc.term);
    const std::size_t n = tokens.size();
    if (n < 2) continue;
    std::size_t h = static_cast<std::size_t>(std::floor(holdout_fraction * static_cast<double>(n)));
    h = std::clamp<std::size_t>(h, 1, n - 1);
    for (std::size_t i = 0; i < h; ++i) std::swap(tokens[i], tokens[i + rng.below(n - i)]);
    std::map<int, int> rest;
    for (std::size_t i = h; i < n; ++i) ++rest[tokens[i]];
    for (std::size_t i = 0; i < h; ++i) held.emplace_back(d, tokens[i]);
    observed.docs[d].clear();
    for (const auto& [term, count] : rest) observed.docs[d].push_back({term, count});
  }
  if (held.empty()) throw Error(Errc::kInvalidArgument, "no document has two or more tokens");
  const TopicModel model = fit_lda(observed, trainer);
  double ll = 0.0;
  for (const auto& [d, w] : held) ll += std::log(mixture_prob(model, d, w));
  return ll / static_cast<double>(held.size());
}

std::vector<double> semantic_coherence(const TopicModel& model, const DocTermMatrix& dtm,
                                       int top_n, Execution exec) {
  const int V = static_cast<int>(model.vocab_size());
  if (top_n < 1 || top_n > V) throw Error(Errc::kInvalidArgument, "top_n must be in [1, V]");
  std::vector<std::vector<int>> postings(model.vocab_size());
  for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
    for (const auto& tc : dtm.docs[d]) postings[tc.term].push_back(static_cast<int>(d));
  }
  const auto co_docs = [&](int a, int b) {
    const auto& x = postings[a];
    const auto& y = postings[b];
    int n = 0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) {
        ++n, ++i, ++j;
      } else if (x[i] < y[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return n;
  };

  const int K = model.num_topics;
  std::vector<double> out(K, 0.0);
  const auto one_topic = [&](int k) {
    const auto order = topic_order(model, k);
    double c = 0.0;
    for (int i = 1; i < top_n; ++i) {
      for (int j = 0; j < i; ++j) {
        const auto dj = postings[order[j]].size();
        if (dj == 0) continue;
        c += std::log((co_docs(order[i], order[j]) + 1.0) / static_cast<double>(dj));
      }
    }
    out[k] = c;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < K; ++k) one_topic(k);
  } else {
    for (int k = 0; k < K; ++k) one_topic(k);
  }
  return out;
}

std::vector<double> exclusivity(const TopicModel& model, int top_n, double frex_weight,
                                Execution exec) {
  const std::size_t V = model.vocab_size();
  const int K = model.num_topics;
  const int n = std::clamp(top_n, 1, static_cast<int>(V));
  std::vector<double> colsum(V, 0.0);
  for (int k = 0; k < K; ++k) {
    for (std::size_t w = 0; w < V; ++w) colsum[w] += model.phi_at(k, w);
  }
  std::vector<double> out(K, 0.0);
  const auto one_topic = [&](int k) {
    std::vector<double> excl(V), freq(V);
    for (std::size_t w = 0; w < V; ++w) {
      freq[w] = model.phi_at(k, w);
      excl[w] = freq[w] / colsum[w];
    }
    const auto ex_rank = average_ranks(excl);
    const auto fr_rank = average_ranks(freq);
    const auto order = topic_order(model, k);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto w = order[i];
      const double ex = ex_rank[w] / static_cast<double>(V);
      const double fr = fr_rank[w] / static_cast<double>(V);
      sum += 1.0 / (frex_weight / ex + (1.0 - frex_weight) / fr);
    }
    out[k] = sum / n;
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(static)
    for (int k = 0; k < K; ++k) one_topic(k);
  } else {
    for (int k = 0; k < K; ++k) one_topic(k);
  }
  return out;
}

double residual_dispersion(const TopicModel& model, const DocTermMatrix& dtm) {
  const double V = static_cast<double>(model.vocab_size());
  const double K = model.num_topics;
  double chi2 = 0.0;
  double nonempty = 0.0;
  for (std::size_t d = 0; d < dtm.num_docs(); ++d) {
    const int n = dtm.doc_length(d);
    if (n == 0) continue;
    nonempty += 1.0;
    // sum_w (x - e)^2 / e = sum_{x>0} x^2 / e - n, since sum_w e = n.
    double s = 0.0;
    for (const auto& tc : dtm.docs[d]) {
      const double e = n * mixture_prob(model, d, tc.term);
      if (e > 0.0) s += static_cast<double>(tc.count) * tc.count / e;
    }
    chi2 += s - n;
  }
  if (nonempty == 0.0) return 0.0;
  double dof = nonempty * (V - 1.0) - (nonempty * (K - 1.0) + K * (V - 1.0));
  if (dof <= 0.0) dof = nonempty * (V - 1.0);
  return dof > 0.0 ? chi2 / dof : 0.0;
}

std::vector<DiagnosticsRow> search_k(const DocTermMatrix& dtm, const std::vector<int>& k_list,
                                     const SearchConfig& config, Execution exec) {
  if (k_list.empty()) throw Error(Errc::kInvalidArgument, "k_list is empty");
  const int n = static_cast<int>(k_list.size());
  std::vector<DiagnosticsRow> rows(n);
  std::vector<std::exception_ptr> errors(n);
  const auto one = [&](int i) {
    try {
      FitConfig fit = config.fit;
      fit.num_topics = k_list[i];
      const TopicModel model = fit_lda(dtm, fit);
      DiagnosticsRow& row = rows[i];
      row.num_topics = k_list[i];
      row.heldout_loglik = held_out_loglik(fit, dtm, config.holdout_fraction, config.holdout_seed);
      row.residual_dispersion = residual_dispersion(model, dtm);
      const int top = std::min<int>(config.top_n, static_cast<int>(dtm.vocab_size()));
      const auto coh = semantic_coherence(model, dtm, top, Execution::kSerial);
      const auto exc = exclusivity(model, top, config.frex_weight, Execution::kSerial);
      row.mean_semantic_coherence = std::accumulate(coh.begin(), coh.end(), 0.0) / coh.size();
      row.mean_exclusivity = std::accumulate(exc.begin(), exc.end(), 0.0) / exc.size();
      row.train_loglik = train_loglik(model, dtm);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) one(i);
  } else {
    for (int i = 0; i < n; ++i) one(i);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string diagnostics_csv(const std::vector<DiagnosticsRow>& rows) {
  std::string out = csv::format_row({"K", "heldout_loglik", "residual_dispersion",
                                     "mean_semantic_coherence", "mean_exclusivity",
                                     "train_loglik"});
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out += csv::format_row({std::to_string(r.num_topics), num(r.heldout_loglik),
                            num(r.residual_dispersion), num(r.mean_semantic_coherence),
                            num(r.mean_exclusivity), num(r.train_loglik)});
  }
  return out;
}

std::vector<std::string> top_words(const TopicModel& model, int k, int n) {
  check_topic(model, k);
  const auto order = topic_order(model, k);
  std::vector<std::string> out;
  for (int i = 0; i < n && i < static_cast<int>(order.size()); ++i) {
    out.push_back(model.vocabulary[order[i]]);
  }
  return out;
}

std::vector<std::string> top_docs(const TopicModel& model, int k, int n) {
  check_topic(model, k);
  std::vector<std::size_t> idx(model.num_docs());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return model.theta_at(a, k) > model.theta_at(b, k);
  });
  std::vector<std::string> out;
  for (int i = 0; i < n && i < static_cast<int>(idx.size()); ++i) {
    out.push_back(model.doc_ids[idx[i]]);
  }
  return out;
}

const TopicLabel* TopicLabelMap::find(int topic) const {
  const auto it = topics.find(topic);
  return it == topics.end() ? nullptr : &it->second;
}

std::string labeling_worksheet(const TopicModel& model, int n_words, int n_docs) {
  std::string out = csv::format_row({"topic_id", "top_words", "top_doc_ids", "label_level",
                                     "label", "coherence_rating", "rationale"});
  for (int k = 0; k < model.num_topics; ++k) {
    out += csv::format_row({std::to_string(k), join(top_words(model, k, n_words), ";"),
                            join(top_docs(model, k, n_docs), ";"), "", "", "", ""});
  }
  return out;
}

TopicLabelMap parse_label_map(std::string_view csv_text, const Codebook& cb) {
  const auto records = csv::parse(csv_text);
  if (records.empty()) throw Error(Errc::kMissingColumn, "topic_id");
  const auto& h = records.front().fields;
  const int c_id = csv::column_index(h, "topic_id");
  const int c_level = csv::column_index(h, "label_level");
  const int c_label = csv::column_index(h, "label");
  const int c_rating = csv::column_index(h, "coherence_rating");
  const int c_why = csv::column_index(h, "rationale");
  if (c_id < 0) throw Error(Errc::kMissingColumn, "topic_id");
  if (c_label < 0) throw Error(Errc::kMissingColumn, "label");

  TopicLabelMap map;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    const std::string where = "line " + std::to_string(records[r].line);
    if (f.size() != h.size()) throw Error(Errc::kParseError, where + ": field count");
    TopicLabel tl;
    int topic = 0;
    try {
      topic = std::stoi(std::string(trim(f[c_id])));
    } catch (const std::exception&) {
      throw Error(Errc::kParseError, where + ": bad topic_id");
    }
    const auto label = trim(f[c_label]);
    if (!label.empty()) {
      std::optional<CodeLevel> level;
      if (c_level >= 0 && !trim(f[c_level]).empty()) {
        level = parse_code_level(f[c_level]);
        if (!level) throw Error(Errc::kParseError, where + ": bad label_level");
      }
      std::optional<CodeRef> ref;
      if (!level) {
        ref = cb.match_any(label);
      } else if (*level == CodeLevel::kChild) {
        ref = cb.match_child(label);
      } else {
        ref = cb.match_parent(label);
      }
      if (!ref) throw Error(Errc::kUnknownLabel, where + ": " + std::string(label));
      tl.label = *ref;
    }
    if (c_rating >= 0 && !trim(f[c_rating]).empty()) {
      const auto s = std::string(trim(f[c_rating]));
      if (s.size() != 1 || s[0] < '1' || s[0] > '4') {
        throw Error(Errc::kInvalidArgument, where + ": coherence_rating must be 1-4");
      }
      tl.coherence_rating = s[0] - '0';
    }
    if (c_why >= 0) tl.rationale = f[c_why];
    map.topics[topic] = std::move(tl);
  }
  return map;
}

ThemeLabelSet assign_topics(const TopicModel& model, const TopicLabelMap& labels,
                            std::size_t doc, const std::string& run_id) {
  if (doc >= model.num_docs()) throw Error(Errc::kIndexOutOfRange, "document index");
  std::vector<int> order(model.num_topics);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return model.theta_at(doc, a) > model.theta_at(doc, b);
  });
  ThemeLabelSet out;
  out.paragraph_id = model.doc_ids[doc];
  out.source = AnnotationSource::kLda;
  out.run_id = run_id;
  std::vector<CodeRef> mapped;
  std::vector<std::string> why;
  for (std::size_t i = 0; i < order.size() && i < kMaxThemeLabels; ++i) {
    const int k = order[i];
    char buf[64];
    std::snprintf(buf, sizeof(buf), "topic %d (%.4f)", k, model.theta_at(doc, k));
    why.emplace_back(buf);
    const auto* tl = labels.find(k);
    if (tl && tl->label) mapped.push_back(*tl->label);
  }
  out.labels = compact_labels(std::move(mapped));
  out.reasoning = "Top topics: " + join(why, ", ");
  return out;
}

AnnotationRun assign_all(const TopicModel& model, const TopicLabelMap& labels,
                         const std::string& run_id) {
  AnnotationRun run;
  run.run_id = run_id;
  run.source = AnnotationSource::kLda;
  run.kind = RunKind::kThematic;
  run.config["num_topics"] = model.num_topics;
  run.config["alpha"] = model.alpha;
  run.config["beta"] = model.beta;
  run.config["iterations"] = model.iterations;
  run.config["burn_in"] = model.burn_in;
  run.config["seed"] = model.seed;
  for (std::size_t d = 0; d < model.num_docs(); ++d) {
    auto set = assign_topics(model, labels, d, run_id);
    AnnotationRecord rec;
    rec.paragraph_id = set.paragraph_id;
    rec.labels = std::move(set.labels);
    rec.reasoning = std::move(set.reasoning);
    run.records.push_back(std::move(rec));
  }
  return run;
}

}  // namespace voicelens::lda
