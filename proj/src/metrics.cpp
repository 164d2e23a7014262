// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"
#include "voicelens/random.hpp"
#include "voicelens/text.hpp"

namespace voicelens::metrics {

using ojson = nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<CodeRef> distinct(const std::vector<CodeRef>& labels) {
  std::vector<CodeRef> out;
  for (const auto& l : labels) {
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
  }
  return out;
}

std::size_t intersection_size(const std::vector<CodeRef>& a, const std::vector<CodeRef>& b) {
  std::size_t n = 0;
  for (const auto& x : a) n += std::find(b.begin(), b.end(), x) != b.end();
  return n;
}

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(Errc::kLengthMismatch, std::string(what) + ": " + std::to_string(a) + " vs " +
                                           std::to_string(b));
  }
}

void require_same_shape(const OneHotMatrix& a, const OneHotMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.columns() != b.columns()) {
    throw Error(Errc::kShapeMismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                          " vs " + std::to_string(b.rows()) + "x" +
                                          std::to_string(b.cols()));
  }
}

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

// Hit rate over paragraphs i with human set human[perm[i]].
double hit_rate_permuted(const LabelSets& machine, const LabelSets& human,
                         const std::vector<std::size_t>* perm, const HitRateOptions& options) {
  double sum = 0.0;
  std::size_t eligible = 0;
  for (std::size_t i = 0; i < machine.size(); ++i) {
    const auto m = distinct(machine[i]);
    if (m.empty()) continue;
    const auto& h = human[perm ? (*perm)[i] : i];
    if (h.empty() && !options.count_empty_human) continue;
    sum += static_cast<double>(intersection_size(m, h)) / static_cast<double>(m.size());
    ++eligible;
  }
  if (eligible == 0) throw Error(Errc::kNoEligibleParagraphs, "no paragraph has machine labels");
  return 100.0 * sum / static_cast<double>(eligible);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

ojson to_json(const MetricValue& v) {
  ojson j;
  j["value"] = v.value;
  j["ci_low"] = v.ci_low ? ojson(*v.ci_low) : ojson(nullptr);
  j["ci_high"] = v.ci_high ? ojson(*v.ci_high) : ojson(nullptr);
  j["n_boot"] = v.n_boot ? ojson(*v.n_boot) : ojson(nullptr);
  j["skipped"] = v.skipped;
  return j;
}

double hit_rate(const LabelSets& machine, const LabelSets& human, const HitRateOptions& options) {
  require_same_length(machine.size(), human.size(), "hit_rate");
  return hit_rate_permuted(machine, human, nullptr, options);
}

double hit_rate(const LabeledCorpus& machine, const LabeledCorpus& human,
                const HitRateOptions& options) {
  require_aligned(machine, human);
  return hit_rate(machine.sets, human.sets, options);
}

double shuffled_hit_rate(const LabelSets& machine, const LabelSets& human, std::uint64_t seed,
                         int repeats, const HitRateOptions& options) {
  require_same_length(machine.size(), human.size(), "shuffled_hit_rate");
  if (machine.size() < 2) throw Error(Errc::kInvalidArgument, "need at least two paragraphs");
  if (repeats < 1) throw Error(Errc::kInvalidArgument, "repeats must be >= 1");
  std::vector<std::size_t> perm(machine.size());
  double sum = 0.0;
  for (int r = 0; r < repeats; ++r) {
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed, static_cast<std::uint64_t>(r));
    rng.shuffle(perm);
    sum += hit_rate_permuted(machine, human, &perm, options);
  }
  return sum / repeats;
}

double shuffled_hit_rate(const LabeledCorpus& machine, const LabeledCorpus& human,
                         std::uint64_t seed, int repeats, const HitRateOptions& options) {
  require_aligned(machine, human);
  return shuffled_hit_rate(machine.sets, human.sets, seed, repeats, options);
}

Overlap overlap_pair(const std::vector<CodeRef>& m_in, const std::vector<CodeRef>& h_in) {
  const auto m = distinct(m_in);
  const auto h = distinct(h_in);
  if (m.empty() || h.empty()) throw Error(Errc::kNoEligibleParagraphs, "empty label set");
  const double inter = static_cast<double>(intersection_size(m, h));
  const double sm = static_cast<double>(m.size());
  const double sh = static_cast<double>(h.size());
  return {inter / std::min(sm, sh), 2.0 * inter / (sm + sh), inter / (sm + sh - inter)};
}

Overlap overlap_coefficients(const LabelSets& machine, const LabelSets& human) {
  require_same_length(machine.size(), human.size(), "overlap_coefficients");
  Overlap sum;
  std::size_t n = 0;
  for (std::size_t i = 0; i < machine.size(); ++i) {
    if (machine[i].empty() || human[i].empty()) continue;
    const auto o = overlap_pair(machine[i], human[i]);
    sum.simpson += o.simpson;
    sum.dice += o.dice;
    sum.jaccard += o.jaccard;
    ++n;
  }
  if (n == 0) throw Error(Errc::kNoEligibleParagraphs, "no paragraph has both label sets");
  const double d = static_cast<double>(n);
  return {sum.simpson / d, sum.dice / d, sum.jaccard / d};
}

Overlap overlap_coefficients(const LabeledCorpus& machine, const LabeledCorpus& human) {
  require_aligned(machine, human);
  return overlap_coefficients(machine.sets, human.sets);
}

BinaryCounts count_binary(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth) {
  require_same_length(pred.size(), truth.size(), "binary vectors");
  BinaryCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const bool p = pred[i] != 0;
    const bool t = truth[i] != 0;
    if (p && t) {
      ++c.tp;
    } else if (p) {
      ++c.fp;
    } else if (t) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

Prf prf_from_counts(const BinaryCounts& c) {
  Prf out;
  out.precision = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  out.recall = ratio(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  out.f1 = ratio(2.0 * out.precision * out.recall, out.precision + out.recall);
  return out;
}

double accuracy_from_counts(const BinaryCounts& c) {
  return ratio(static_cast<double>(c.tp + c.tn), static_cast<double>(c.total()));
}

double kappa_from_counts(const BinaryCounts& c) {
  const double n = static_cast<double>(c.total());
  if (n == 0.0) throw Error(Errc::kLengthMismatch, "empty vectors");
  const double po = static_cast<double>(c.tp + c.tn) / n;
  const double pred_pos = static_cast<double>(c.tp + c.fp) / n;
  const double true_pos = static_cast<double>(c.tp + c.fn) / n;
  const double pe = pred_pos * true_pos + (1.0 - pred_pos) * (1.0 - true_pos);
  if (pe == 1.0) return po == 1.0 ? 1.0 : 0.0;
  return (po - pe) / (1.0 - pe);
}

std::optional<double> auc_from_counts(const BinaryCounts& c) {
  const auto pos = c.tp + c.fn;
  const auto neg = c.tn + c.fp;
  if (pos == 0 || neg == 0) return std::nullopt;
  const double tpr = static_cast<double>(c.tp) / static_cast<double>(pos);
  const double tnr = static_cast<double>(c.tn) / static_cast<double>(neg);
  return (tpr + tnr) / 2.0;
}

Prf micro_prf(const OneHotMatrix& machine, const OneHotMatrix& human) {
  require_same_shape(machine, human);
  return prf_from_counts(count_binary(machine.cells(), human.cells()));
}

Prf macro_prf(const OneHotMatrix& machine, const OneHotMatrix& human) {
  require_same_shape(machine, human);
  Prf sum;
  const std::size_t cols = machine.cols();
  if (cols == 0) return sum;
  for (std::size_t c = 0; c < cols; ++c) {
    BinaryCounts counts;
    for (std::size_t r = 0; r < machine.rows(); ++r) {
      const std::uint8_t p = machine.at(r, c);
      const std::uint8_t t = human.at(r, c);
      counts += count_binary(std::span(&p, 1), std::span(&t, 1));
    }
    const auto prf = prf_from_counts(counts);
    sum.precision += prf.precision;
    sum.recall += prf.recall;
    sum.f1 += prf.f1;
  }
  const double d = static_cast<double>(cols);
  return {sum.precision / d, sum.recall / d, sum.f1 / d};
}

double cohen_kappa(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth) {
  return kappa_from_counts(count_binary(pred, truth));
}

double auc_binary(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth) {
  const auto auc = auc_from_counts(count_binary(pred, truth));
  if (!auc) throw Error(Errc::kSingleClassTruth, "truth vector has a single class");
  return *auc;
}

double binary_accuracy(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> truth) {
  return accuracy_from_counts(count_binary(pred, truth));
}

double percentile(std::vector<double> sample, double q) {
  if (sample.empty()) throw Error(Errc::kInvalidArgument, "percentile of empty sample");
  std::sort(sample.begin(), sample.end());
  const double h = (static_cast<double>(sample.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sample.size()) return sample.back();
  return sample[lo] + (h - static_cast<double>(lo)) * (sample[lo + 1] - sample[lo]);
}

std::vector<std::optional<MetricValue>> bootstrap_many(std::size_t n_rows, std::size_t n_stats,
                                                       const MultiStatistic& stat, int iters,
                                                       std::uint64_t seed, Execution exec) {
  if (n_rows < 2) throw Error(Errc::kInvalidArgument, "bootstrap needs at least two rows");
  if (iters < 1) throw Error(Errc::kInvalidArgument, "bootstrap needs at least one iteration");
  std::vector<std::vector<double>> results(iters);
  std::vector<std::exception_ptr> errors(iters);
  const auto one = [&](int it) {
    try {
      Rng rng(seed, static_cast<std::uint64_t>(it));
      std::vector<std::size_t> idx(n_rows);
      for (auto& i : idx) i = rng.below(n_rows);
      results[it] = stat(idx);
    } catch (const Error&) {
      results[it].assign(n_stats, kNaN);  // undefined on this resample
    } catch (...) {
      errors[it] = std::current_exception();
    }
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int it = 0; it < iters; ++it) one(it);
  } else {
    for (int it = 0; it < iters; ++it) one(it);
  }
  for (int it = 0; it < iters; ++it) {
    if (errors[it]) std::rethrow_exception(errors[it]);
    if (results[it].size() != n_stats) {
      throw Error(Errc::kShapeMismatch, "statistic returned the wrong number of values");
    }
  }

  std::vector<std::optional<MetricValue>> out(n_stats);
  for (std::size_t s = 0; s < n_stats; ++s) {
    std::vector<double> sample;
    sample.reserve(iters);
    for (int it = 0; it < iters; ++it) {
      if (!std::isnan(results[it][s])) sample.push_back(results[it][s]);
    }
    if (sample.empty()) continue;
    MetricValue v;
    double sum = 0.0;
    for (double x : sample) sum += x;
    v.value = sum / static_cast<double>(sample.size());
    v.ci_low = percentile(sample, 0.025);
    v.ci_high = percentile(sample, 0.975);
    v.n_boot = static_cast<int>(sample.size());
    v.skipped = iters - static_cast<int>(sample.size());
    out[s] = v;
  }
  return out;
}

MetricValue bootstrap(std::size_t n_rows, const Statistic& stat, int iters, std::uint64_t seed,
                      Execution exec) {
  const auto wrapped = [&](std::span<const std::size_t> idx) -> std::vector<double> {
    return {stat(idx)};
  };
  const auto out = bootstrap_many(n_rows, 1, wrapped, iters, seed, exec);
  if (!out[0]) {
    // Re-run the first resample serially to surface the statistic's error.
    Rng rng(seed, 0);
    std::vector<std::size_t> idx(n_rows);
    for (auto& i : idx) i = rng.below(n_rows);
    stat(idx);
    throw Error(Errc::kInvalidArgument, "statistic undefined on every resample");
  }
  return *out[0];
}

PooledMetrics pooled_matrix_metrics(const OneHotMatrix& machine, const OneHotMatrix& human,
                                    int iters, std::uint64_t seed, Execution exec) {
  require_same_shape(machine, human);
  const std::size_t cols = machine.cols();
  std::vector<BinaryCounts> rows(machine.rows());
  for (std::size_t r = 0; r < machine.rows(); ++r) {
    rows[r] = count_binary(std::span(machine.cells()).subspan(r * cols, cols),
                           std::span(human.cells()).subspan(r * cols, cols));
  }
  const auto stat = [&](std::span<const std::size_t> idx) {
    BinaryCounts c;
    for (const auto i : idx) c += rows[i];
    const auto auc = auc_from_counts(c);
    return std::vector<double>{accuracy_from_counts(c), kappa_from_counts(c), auc ? *auc : kNaN};
  };
  const auto values = bootstrap_many(machine.rows(), 3, stat, iters, seed, exec);
  PooledMetrics out;
  out.accuracy = values[0].value();
  out.kappa = values[1].value();
  out.auc = values[2];
  return out;
}

std::vector<CodewiseMetric> codewise_metrics(const OneHotMatrix& machine, const OneHotMatrix& human,
                                             int iters, std::uint64_t seed, Execution exec) {
  require_same_shape(machine, human);
  const auto cols = static_cast<std::ptrdiff_t>(machine.cols());
  std::vector<CodewiseMetric> out(machine.cols());
  std::vector<std::exception_ptr> errors(machine.cols());
  const auto one = [&](std::ptrdiff_t c) {
    try {
      std::vector<BinaryCounts> rows(machine.rows());
      CodewiseMetric& m = out[c];
      m.code = machine.columns()[c];
      for (std::size_t r = 0; r < machine.rows(); ++r) {
        const std::uint8_t p = machine.at(r, c);
        const std::uint8_t t = human.at(r, c);
        rows[r] = count_binary(std::span(&p, 1), std::span(&t, 1));
        m.truth_positive += t;
        m.machine_positive += p;
      }
      const bool single_class =
          m.truth_positive == 0 || m.truth_positive == static_cast<int>(machine.rows());
      const auto stat = [&](std::span<const std::size_t> idx) {
        BinaryCounts cnt;
        for (const auto i : idx) cnt += rows[i];
        const auto auc = auc_from_counts(cnt);
        return std::vector<double>{kappa_from_counts(cnt), auc ? *auc : kNaN};
      };
      const auto values = bootstrap_many(machine.rows(), 2, stat, iters, seed, Execution::kSerial);
      m.kappa = values[0].value();
      if (!single_class) m.auc = values[1];
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < cols; ++c) one(c);
  } else {
    for (std::ptrdiff_t c = 0; c < cols; ++c) one(c);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

using SparseVec = std::map<int, double>;

double cosine(const SparseVec& a, const SparseVec& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [t, x] : a) {
    na += x * x;
    if (const auto it = b.find(t); it != b.end()) dot += x * it->second;
  }
  for (const auto& [t, y] : b) nb += y * y;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

SparseVec weight(const std::map<int, int>& tf, const std::vector<double>& idf) {
  SparseVec out;
  for (const auto& [t, n] : tf) out[t] = n * idf[t];
  return out;
}

std::vector<double> smoothed_idf(const std::vector<const std::map<int, int>*>& collection,
                                 std::size_t vocab) {
  std::vector<double> df(vocab, 0.0);
  for (const auto* doc : collection) {
    for (const auto& [t, n] : *doc) df[t] += 1.0;
  }
  const double N = static_cast<double>(collection.size());
  std::vector<double> idf(vocab);
  for (std::size_t t = 0; t < vocab; ++t) idf[t] = std::log((1.0 + N) / (1.0 + df[t])) + 1.0;
  return idf;
}

}  // namespace

double tfidf_cosine(const std::vector<std::string>& a, const std::vector<std::string>& b,
                    const std::vector<std::vector<std::string>>& collection) {
  std::unordered_map<std::string, int> ids;
  const auto counts = [&](const std::vector<std::string>& toks) {
    std::map<int, int> tf;
    for (const auto& t : toks) {
      const auto [it, _] = ids.emplace(t, static_cast<int>(ids.size()));
      ++tf[it->second];
    }
    return tf;
  };
  const auto ta = counts(a);
  const auto tb = counts(b);
  std::vector<std::map<int, int>> docs;
  for (const auto& d : collection) docs.push_back(counts(d));
  std::vector<const std::map<int, int>*> ptrs;
  for (const auto& d : docs) ptrs.push_back(&d);
  const auto idf = smoothed_idf(ptrs, ids.size());
  return cosine(weight(ta, idf), weight(tb, idf));
}

std::vector<CodeSimilarity> tfidf_cosine_by_code(const Corpus& corpus,
                                                 const LabeledCorpus& machine,
                                                 const LabeledCorpus& human,
                                                 const std::vector<CodeRef>& universe,
                                                 Execution exec) {
  require_aligned(machine, human);
  if (machine.size() != corpus.size()) {
    throw Error(Errc::kShapeMismatch, "labeled corpus does not match the corpus");
  }
  std::unordered_map<std::string, int> ids;
  std::vector<std::map<int, int>> para_tf(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (const auto& t : tokenize_words(corpus.paragraphs()[i].text)) {
      const auto [it, _] = ids.emplace(t, static_cast<int>(ids.size()));
      ++para_tf[i][it->second];
    }
  }
  std::map<CodeRef, std::size_t> col;
  for (std::size_t c = 0; c < universe.size(); ++c) col.emplace(universe[c], c);
  std::vector<std::map<int, int>> h_doc(universe.size()), m_doc(universe.size());
  const auto add = [&](const LabeledCorpus& lc, std::vector<std::map<int, int>>& docs) {
    for (std::size_t i = 0; i < lc.size(); ++i) {
      for (const auto& ref : distinct(lc.sets[i])) {
        const auto it = col.find(ref);
        if (it == col.end()) continue;
        for (const auto& [t, n] : para_tf[i]) docs[it->second][t] += n;
      }
    }
  };
  add(human, h_doc);
  add(machine, m_doc);

  std::vector<const std::map<int, int>*> collection;
  for (std::size_t c = 0; c < universe.size(); ++c) {
    if (!h_doc[c].empty()) collection.push_back(&h_doc[c]);
    if (!m_doc[c].empty()) collection.push_back(&m_doc[c]);
  }
  const auto idf = smoothed_idf(collection, ids.size());

  std::vector<CodeSimilarity> out(universe.size());
  const auto n = static_cast<std::ptrdiff_t>(universe.size());
  const auto one = [&](std::ptrdiff_t c) {
    out[c].code = universe[c];
    if (h_doc[c].empty() || m_doc[c].empty()) return;
    out[c].cosine = cosine(weight(h_doc[c], idf), weight(m_doc[c], idf));
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < n; ++c) one(c);
  } else {
    for (std::ptrdiff_t c = 0; c < n; ++c) one(c);
  }
  return out;
}

SentimentAgreement confusion_stats(const ConfusionMatrix3& counts) {
  SentimentAgreement out;
  out.counts = counts;
  double total = 0.0, trace = 0.0;
  std::array<double, 3> row{}, col{};
  for (int h = 0; h < 3; ++h) {
    for (int m = 0; m < 3; ++m) {
      const auto x = static_cast<double>(counts[h][m]);
      if (x < 0) throw Error(Errc::kInvalidArgument, "negative confusion count");
      total += x;
      row[h] += x;
      col[m] += x;
      if (h == m) trace += x;
    }
  }
  if (total == 0.0) throw Error(Errc::kNoEligibleParagraphs, "empty confusion matrix");
  const double po = trace / total;
  double pe = 0.0;
  for (int k = 0; k < 3; ++k) pe += (row[k] / total) * (col[k] / total);
  out.accuracy = po;
  out.kappa = pe == 1.0 ? (po == 1.0 ? 1.0 : 0.0) : (po - pe) / (1.0 - pe);
  return out;
}

SentimentAgreement sentiment_confusion(const SentimentList& machine, const SentimentList& human,
                                       const std::vector<std::string>& ids) {
  require_same_length(machine.size(), human.size(), "sentiment lists");
  require_same_length(ids.size(), human.size(), "sentiment ids");
  ConfusionMatrix3 counts{};
  for (std::size_t i = 0; i < human.size(); ++i) {
    if (!human[i]) continue;
    if (!machine[i]) throw Error(Errc::kMissingAnnotation, ids[i]);
    ++counts[static_cast<int>(*human[i])][static_cast<int>(*machine[i])];
  }
  return confusion_stats(counts);
}

std::vector<ThemeAgreement> agreement_by_theme(const SentimentList& machine,
                                               const SentimentList& human,
                                               const LabeledCorpus& human_themes) {
  require_same_length(machine.size(), human.size(), "sentiment lists");
  require_same_length(human_themes.size(), human.size(), "themes vs sentiment");
  std::vector<CodeRef> order;
  std::map<CodeRef, std::pair<int, int>> tally;  // (paragraphs, agreements)
  for (std::size_t i = 0; i < human.size(); ++i) {
    if (!human[i] || !machine[i]) continue;
    for (const auto& ref : distinct(human_themes.sets[i])) {
      auto [it, inserted] = tally.try_emplace(ref, 0, 0);
      if (inserted) order.push_back(ref);
      ++it->second.first;
      it->second.second += *human[i] == *machine[i];
    }
  }
  std::vector<ThemeAgreement> out;
  for (const auto& ref : order) {
    const auto [n, agree] = tally[ref];
    out.push_back({ref, n, 100.0 * agree / n});
  }
  return out;
}

ThemeEval evaluate_themes(const Corpus& corpus, const Codebook& cb, const LabeledCorpus& machine_in,
                          const LabeledCorpus& human_in, LabelLevel level,
                          const EvalConfig& config) {
  LabeledCorpus machine = machine_in;
  LabeledCorpus human = human_in;
  if (level == LabelLevel::kParent) {
    machine = to_parent_level(machine, cb);
    human = to_parent_level(human, cb);
  }
  const auto universe = code_universe(cb, level, config.include_parent_only);
  if (level == LabelLevel::kOriginal && !config.include_parent_only) {
    machine = restrict_to(machine, universe);
    human = restrict_to(human, universe);
  }
  require_aligned(machine, human);

  ThemeEval ev;
  ev.level = level;
  ev.hit_rate = hit_rate(machine, human, config.hit_rate);
  ev.shuffled_hit_rate =
      shuffled_hit_rate(machine, human, config.shuffle_seed, config.shuffle_repeats, config.hit_rate);
  ev.overlap = overlap_coefficients(machine, human);
  const auto m = one_hot(machine, universe);
  const auto h = one_hot(human, universe);
  ev.micro = micro_prf(m, h);
  ev.macro = macro_prf(m, h);
  ev.pooled = pooled_matrix_metrics(m, h, config.bootstrap_iters, config.bootstrap_seed, config.exec);
  ev.codewise = codewise_metrics(m, h, config.bootstrap_iters, config.bootstrap_seed, config.exec);
  ev.cosine = tfidf_cosine_by_code(corpus, machine, human, universe, config.exec);
  return ev;
}

namespace {

ojson config_json(const EvalConfig& config) {
  ojson j;
  j["bootstrap_iters"] = config.bootstrap_iters;
  j["bootstrap_seed"] = config.bootstrap_seed;
  j["shuffle_repeats"] = config.shuffle_repeats;
  j["shuffle_seed"] = config.shuffle_seed;
  j["include_parent_only"] = config.include_parent_only;
  j["count_empty_human"] = config.hit_rate.count_empty_human;
  return j;
}

SentimentEval sentiment_section(const Corpus& corpus, const AnnotationRun& machine,
                                const AnnotationRun& human, const AnnotationRun* human_themes) {
  const auto m = sentiments_in_order(machine, corpus);
  const auto h = sentiments_in_order(human, corpus);
  std::vector<std::string> ids;
  for (const auto& p : corpus.paragraphs()) ids.push_back(p.id);
  SentimentEval ev;
  ev.agreement = sentiment_confusion(m, h, ids);
  if (human_themes) ev.by_theme = agreement_by_theme(m, h, labeled_from_run(*human_themes, corpus));
  return ev;
}

}  // namespace

EvalReport evaluate(const Corpus& corpus, const Codebook& cb, const AnnotationRun& machine_themes,
                    const AnnotationRun& human_themes, const AnnotationRun* machine_sentiment,
                    const AnnotationRun* human_sentiment, const EvalConfig& config) {
  EvalReport report;
  report.machine_run = machine_themes.run_id;
  report.human_run = human_themes.run_id;
  report.machine_source = std::string(to_string(machine_themes.source));
  report.config = config_json(config);
  const auto machine = labeled_from_run(machine_themes, corpus);
  const auto human = labeled_from_run(human_themes, corpus);
  for (const auto level : {LabelLevel::kOriginal, LabelLevel::kParent}) {
    report.themes.push_back(evaluate_themes(corpus, cb, machine, human, level, config));
  }
  if (machine_sentiment && human_sentiment) {
    report.sentiment = sentiment_section(corpus, *machine_sentiment, *human_sentiment, &human_themes);
  }
  return report;
}

EvalReport evaluate_sentiment(const Corpus& corpus, const AnnotationRun& machine_sentiment,
                              const AnnotationRun& human_sentiment,
                              const AnnotationRun* human_themes, const EvalConfig& config) {
  EvalReport report;
  report.machine_run = machine_sentiment.run_id;
  report.human_run = human_sentiment.run_id;
  report.machine_source = std::string(to_string(machine_sentiment.source));
  report.config = config_json(config);
  report.sentiment = sentiment_section(corpus, machine_sentiment, human_sentiment, human_themes);
  return report;
}

namespace {

ojson opt_metric(const std::optional<MetricValue>& v) { return v ? to_json(*v) : ojson(nullptr); }

ojson prf_json(const Prf& p) {
  return ojson{{"precision", p.precision}, {"recall", p.recall}, {"f1", p.f1}};
}

}  // namespace

ojson to_json(const EvalReport& report) {
  ojson j;
  j["machine_run"] = report.machine_run;
  j["human_run"] = report.human_run;
  j["machine_source"] = report.machine_source;
  j["source_pair"] = report.source_pair();
  j["config"] = report.config;
  j["themes"] = ojson::array();
  for (const auto& t : report.themes) {
    ojson e;
    e["level"] = to_string(t.level);
    e["hit_rate"] = t.hit_rate;
    e["shuffled_hit_rate"] = t.shuffled_hit_rate;
    e["simpson"] = t.overlap.simpson;
    e["dice"] = t.overlap.dice;
    e["jaccard"] = t.overlap.jaccard;
    e["micro"] = prf_json(t.micro);
    e["macro"] = prf_json(t.macro);
    e["pooled"] = ojson{{"accuracy", to_json(t.pooled.accuracy)},
                        {"kappa", to_json(t.pooled.kappa)},
                        {"auc", opt_metric(t.pooled.auc)}};
    e["codewise"] = ojson::array();
    for (const auto& c : t.codewise) {
      e["codewise"].push_back(ojson{{"code", to_string(c.code)},
                                    {"truth_positive", c.truth_positive},
                                    {"machine_positive", c.machine_positive},
                                    {"kappa", to_json(c.kappa)},
                                    {"auc", opt_metric(c.auc)}});
    }
    e["cosine"] = ojson::array();
    for (const auto& c : t.cosine) {
      e["cosine"].push_back(
          ojson{{"code", to_string(c.code)}, {"cosine", c.cosine ? ojson(*c.cosine) : ojson(nullptr)}});
    }
    j["themes"].push_back(std::move(e));
  }
  if (report.sentiment) {
    const auto& s = *report.sentiment;
    ojson e;
    e["confusion"] = ojson::array();
    for (const auto& row : s.agreement.counts) e["confusion"].push_back(row);
    e["labels"] = {"Positive", "Negative", "Neutral"};
    e["accuracy"] = s.agreement.accuracy;
    e["kappa"] = s.agreement.kappa;
    e["by_theme"] = ojson::array();
    for (const auto& t : s.by_theme) {
      e["by_theme"].push_back(
          ojson{{"code", to_string(t.code)}, {"paragraphs", t.paragraphs}, {"percent", t.percent}});
    }
    j["sentiment"] = std::move(e);
  } else {
    j["sentiment"] = nullptr;
  }
  return j;
}

std::string to_csv(const EvalReport& report) {
  std::string out =
      csv::format_row({"metric", "level", "source_pair", "code", "value", "ci_low", "ci_high"});
  const auto pair = report.source_pair();
  const auto row = [&](const std::string& metric, const std::string& level,
                       const std::string& code, double value, std::optional<double> lo = {},
                       std::optional<double> hi = {}) {
    out += csv::format_row({metric, level, pair, code, fmt(value), lo ? fmt(*lo) : "",
                            hi ? fmt(*hi) : ""});
  };
  const auto metric_row = [&](const std::string& metric, const std::string& level,
                              const std::string& code, const MetricValue& v) {
    row(metric, level, code, v.value, v.ci_low, v.ci_high);
  };
  for (const auto& t : report.themes) {
    const std::string level(to_string(t.level));
    row("hit_rate", level, "", t.hit_rate);
    row("shuffled_hit_rate", level, "", t.shuffled_hit_rate);
    row("simpson", level, "", t.overlap.simpson);
    row("dice", level, "", t.overlap.dice);
    row("jaccard", level, "", t.overlap.jaccard);
    row("micro_precision", level, "", t.micro.precision);
    row("micro_recall", level, "", t.micro.recall);
    row("micro_f1", level, "", t.micro.f1);
    row("macro_precision", level, "", t.macro.precision);
    row("macro_recall", level, "", t.macro.recall);
    row("macro_f1", level, "", t.macro.f1);
    metric_row("accuracy", level, "", t.pooled.accuracy);
    metric_row("kappa", level, "", t.pooled.kappa);
    if (t.pooled.auc) metric_row("auc", level, "", *t.pooled.auc);
    for (const auto& c : t.codewise) {
      metric_row("code_kappa", level, to_string(c.code), c.kappa);
      if (c.auc) metric_row("code_auc", level, to_string(c.code), *c.auc);
    }
    for (const auto& c : t.cosine) {
      if (c.cosine) row("code_cosine", level, to_string(c.code), *c.cosine);
    }
  }
  if (report.sentiment) {
    const auto& s = *report.sentiment;
    row("sentiment_accuracy", "", "", s.agreement.accuracy);
    row("sentiment_kappa", "", "", s.agreement.kappa);
    for (const auto& t : s.by_theme) row("sentiment_agreement", "", to_string(t.code), t.percent);
  }
  return out;
}

}  // namespace voicelens::metrics
