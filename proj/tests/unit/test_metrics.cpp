// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "support/test_support.hpp"
#include "voicelens/error.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/metrics.hpp"
#include "voicelens/random.hpp"

using namespace voicelens;
using namespace voicelens::metrics;
using voicelens::testing::make_run;
using voicelens::testing::small_codebook;
using voicelens::testing::small_corpus;

namespace {

std::vector<CodeRef> refs(std::initializer_list<const char*> labels) {
  std::vector<CodeRef> out;
  for (const char* l : labels) out.push_back(CodeRef::child(l));
  return out;
}

OneHotMatrix matrix(const std::vector<std::vector<int>>& rows) {
  std::vector<std::string> ids;
  std::vector<CodeRef> cols;
  for (std::size_t r = 0; r < rows.size(); ++r) ids.push_back("R" + std::to_string(r));
  for (std::size_t c = 0; c < rows.at(0).size(); ++c) cols.push_back(CodeRef::child("C" + std::to_string(c)));
  OneHotMatrix m(ids, cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, static_cast<std::uint8_t>(rows[r][c]));
  }
  return m;
}

std::vector<std::uint8_t> bits(std::initializer_list<int> v) {
  return std::vector<std::uint8_t>(v.begin(), v.end());
}

template <typename F>
Errc error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::kInvalidArgument;
}

}  // namespace

TEST_CASE("hit rate on identical, partial and empty-human paragraphs") {
  CHECK(hit_rate(LabelSets{refs({"A", "B", "C"}), refs({"A", "B", "C"})},
                 LabelSets{refs({"A", "B", "C"}), refs({"A", "B", "C"})}) == doctest::Approx(100.0));
  CHECK(hit_rate(LabelSets{refs({"A", "B", "C"})}, LabelSets{refs({"A"})}) ==
        doctest::Approx(100.0 / 3.0).epsilon(1e-12));
  CHECK(hit_rate(LabelSets{refs({"A"})}, LabelSets{{}}) == 0.0);
}

TEST_CASE("hit rate skips paragraphs without machine labels") {
  const LabelSets m{{}, refs({"A"})};
  const LabelSets h{refs({"A"}), refs({"A"})};
  CHECK(hit_rate(m, h) == doctest::Approx(100.0));
  CHECK(error_code([] { hit_rate(LabelSets{{}}, LabelSets{refs({"A"})}); }) ==
        Errc::kNoEligibleParagraphs);
  CHECK(error_code([] { hit_rate(LabelSets{{}}, LabelSets{}); }) == Errc::kLengthMismatch);
}

TEST_CASE("hit rate can skip paragraphs with empty human sets") {
  const LabelSets m{refs({"A"}), refs({"B"})};
  const LabelSets h{{}, refs({"B"})};
  CHECK(hit_rate(m, h) == doctest::Approx(50.0));
  CHECK(hit_rate(m, h, HitRateOptions{false}) == doctest::Approx(100.0));
}

TEST_CASE("shuffled hit rate of constant data equals the unshuffled rate") {
  const LabelSets s(20, refs({"A", "B"}));
  CHECK(shuffled_hit_rate(s, s, 3, 50) == doctest::Approx(100.0));
}

TEST_CASE("shuffled hit rate over two paragraphs converges to one half") {
  const LabelSets m{refs({"A"}), refs({"B"})};
  const double v = shuffled_hit_rate(m, m, 11, 4000);
  CHECK(v == doctest::Approx(50.0).epsilon(0.05));
  CHECK(shuffled_hit_rate(m, m, 11, 4000) == v);
  CHECK(error_code([] { shuffled_hit_rate(LabelSets{refs({"A"})}, LabelSets{refs({"A"})}, 1); }) ==
        Errc::kInvalidArgument);
}

TEST_CASE("overlap coefficients on worked pairs") {
  auto o = overlap_pair(refs({"A", "B"}), refs({"B", "C"}));
  CHECK(o.simpson == doctest::Approx(0.5));
  CHECK(o.dice == doctest::Approx(0.5));
  CHECK(o.jaccard == doctest::Approx(1.0 / 3.0));
  o = overlap_pair(refs({"A"}), refs({"A", "B", "C"}));
  CHECK(o.simpson == doctest::Approx(1.0));
  CHECK(o.dice == doctest::Approx(0.5));
  CHECK(o.jaccard == doctest::Approx(1.0 / 3.0));
  o = overlap_pair(refs({"A", "B"}), refs({"B", "A"}));
  CHECK(o.simpson == 1.0);
  CHECK(o.dice == 1.0);
  CHECK(o.jaccard == 1.0);
}

TEST_CASE("overlap coefficients skip pairs with an empty side") {
  const LabelSets m{refs({"A"}), {}, refs({"A", "B"})};
  const LabelSets h{refs({"A"}), refs({"A"}), {}};
  const auto o = overlap_coefficients(m, h);
  CHECK(o.simpson == 1.0);
  CHECK(error_code([] { overlap_coefficients(LabelSets{{}}, LabelSets{refs({"A"})}); }) ==
        Errc::kNoEligibleParagraphs);
}

TEST_CASE("micro precision, recall and F1") {
  // Columns A, B. truth {A},{A,B},{} vs machine {A,B},{B},{A}.
  const auto truth = matrix({{1, 0}, {1, 1}, {0, 0}});
  const auto machine = matrix({{1, 1}, {0, 1}, {1, 0}});
  const auto p = micro_prf(machine, truth);
  CHECK(p.precision == doctest::Approx(0.5));
  CHECK(p.recall == doctest::Approx(2.0 / 3.0));
  CHECK(p.f1 == doctest::Approx(4.0 / 7.0));
  const auto same = micro_prf(truth, truth);
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f1 == 1.0);
  const auto zeros = micro_prf(matrix({{0, 0}, {0, 0}, {0, 0}}), truth);
  CHECK(zeros.precision == 0.0);
  CHECK(zeros.recall == 0.0);
  CHECK(zeros.f1 == 0.0);
  CHECK(error_code([&] { micro_prf(matrix({{0, 0}}), truth); }) == Errc::kShapeMismatch);
}

TEST_CASE("macro F1 averages per-column values") {
  const auto truth = matrix({{1, 0}, {1, 1}, {0, 0}});
  const auto machine = matrix({{1, 1}, {0, 1}, {1, 0}});
  // Column A: tp 1 fp 1 fn 1 -> P=R=F=0.5. Column B: tp 1 fp 1 fn 0 -> P 0.5, R 1, F 2/3.
  const auto p = macro_prf(machine, truth);
  CHECK(p.precision == doctest::Approx(0.5));
  CHECK(p.recall == doctest::Approx(0.75));
  CHECK(p.f1 == doctest::Approx((0.5 + 2.0 / 3.0) / 2.0));
}

TEST_CASE("kappa hand cases") {
  CHECK(cohen_kappa(bits({1, 0, 1, 0}), bits({1, 1, 0, 0})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cohen_kappa(bits({1, 1, 0, 1}), bits({1, 1, 0, 0})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cohen_kappa(bits({1, 1, 0, 0}), bits({1, 1, 0, 0})) == 1.0);
  // p_e = 1: both constant and equal, then constant and different.
  CHECK(cohen_kappa(bits({0, 0, 0}), bits({0, 0, 0})) == 1.0);
  CHECK(cohen_kappa(bits({1, 1, 1}), bits({0, 0, 0})) == 0.0);
  CHECK(error_code([] { cohen_kappa(bits({1}), bits({1, 0})); }) == Errc::kLengthMismatch);
}

TEST_CASE("AUC for hard labels is balanced accuracy") {
  CHECK(auc_binary(bits({1, 1, 0, 0}), bits({1, 1, 0, 0})) == 1.0);
  CHECK(auc_binary(bits({0, 0, 1, 1}), bits({1, 1, 0, 0})) == 0.0);
  CHECK(auc_binary(bits({1, 0, 1, 0}), bits({1, 1, 0, 0})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(error_code([] { auc_binary(bits({1, 0}), bits({0, 0})); }) == Errc::kSingleClassTruth);
  CHECK_FALSE(auc_from_counts(count_binary(bits({1, 0}), bits({1, 1}))).has_value());
}

TEST_CASE("percentile uses linear interpolation") {
  CHECK(percentile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
  CHECK(percentile({4, 1, 3, 2}, 0.0) == 1.0);
  CHECK(percentile({4, 1, 3, 2}, 1.0) == 4.0);
  CHECK(percentile({10, 20}, 0.25) == doctest::Approx(12.5));
}

TEST_CASE("bootstrap of constant data has a zero-width interval") {
  const auto v = bootstrap(
      30, [](std::span<const std::size_t>) { return 0.25; }, 100, 5);
  CHECK(v.value == 0.25);
  CHECK(*v.ci_low == 0.25);
  CHECK(*v.ci_high == 0.25);
  CHECK(*v.n_boot == 100);
}

TEST_CASE("bootstrap is deterministic and independent of execution mode") {
  Rng rng(42);
  std::vector<double> x(200);
  for (auto& v : x) v = rng.uniform();
  const Statistic mean = [&](std::span<const std::size_t> idx) {
    double s = 0;
    for (auto i : idx) s += x[i];
    return s / static_cast<double>(idx.size());
  };
  const auto a = bootstrap(x.size(), mean, 100, 9, Execution::kSerial);
  const auto b = bootstrap(x.size(), mean, 100, 9, Execution::kParallel);
  const auto c = bootstrap(x.size(), mean, 100, 9, Execution::kParallel);
  CHECK(a == b);
  CHECK(b == c);
  CHECK(*a.ci_low <= a.value);
  CHECK(a.value <= *a.ci_high);
  const auto d = bootstrap(x.size(), mean, 100, 10, Execution::kSerial);
  CHECK_FALSE(a == d);
}

TEST_CASE("bootstrap counts resamples where the statistic is undefined") {
  // Undefined whenever row 0 is absent from the resample.
  const Statistic stat = [](std::span<const std::size_t> idx) {
    for (auto i : idx) {
      if (i == 0) return 1.0;
    }
    throw Error(Errc::kSingleClassTruth, "row 0 missing");
  };
  const auto v = bootstrap(3, stat, 200, 1);
  CHECK(v.skipped > 0);
  CHECK(*v.n_boot + v.skipped == 200);
  CHECK(v.value == 1.0);
  CHECK(error_code([] {
          bootstrap(1, [](std::span<const std::size_t>) { return 0.0; }, 10, 1);
        }) == Errc::kInvalidArgument);
}

TEST_CASE("pooled metrics on identical matrices") {
  const auto m = matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}});
  const auto p = pooled_matrix_metrics(m, m, 50, 3);
  CHECK(p.accuracy.value == 1.0);
  CHECK(p.kappa.value == 1.0);
  REQUIRE(p.auc.has_value());
  CHECK(p.auc->value == 1.0);
  CHECK(*p.kappa.ci_low == *p.kappa.ci_high);
}

TEST_CASE("pooled accuracy with ten percent flips is near 0.9") {
  Rng rng(8);
  std::vector<std::vector<int>> truth(500, std::vector<int>(36)), machine;
  for (auto& row : truth) {
    for (int k = 0; k < 3; ++k) row[rng.below(36)] = 1;
  }
  machine = truth;
  for (auto& row : machine) {
    for (auto& c : row) {
      if (rng.uniform() < 0.1) c = 1 - c;
    }
  }
  const auto p = pooled_matrix_metrics(matrix(machine), matrix(truth), 100, 4);
  CHECK(p.accuracy.value == doctest::Approx(0.9).epsilon(0.02 / 0.9));
}

TEST_CASE("all-zero machine against sparse truth gives high accuracy and kappa near zero") {
  Rng rng(12);
  std::vector<std::vector<int>> truth(200, std::vector<int>(20)), machine(200, std::vector<int>(20));
  for (auto& row : truth) row[rng.below(20)] = 1;
  const auto p = pooled_matrix_metrics(matrix(machine), matrix(truth), 50, 4);
  CHECK(p.accuracy.value == doctest::Approx(0.95));
  CHECK(std::abs(p.kappa.value) < 1e-12);
}

TEST_CASE("codewise metrics: perfect, inverted and all-zero columns") {
  const auto truth = matrix({{1, 1, 0}, {0, 0, 0}, {1, 1, 0}, {0, 0, 0}, {1, 1, 0}, {0, 0, 0}});
  const auto machine = matrix({{1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 1, 0}, {1, 0, 0}, {0, 1, 0}});
  const auto serial = codewise_metrics(machine, truth, 100, 6, Execution::kSerial);
  const auto parallel = codewise_metrics(machine, truth, 100, 6, Execution::kParallel);
  REQUIRE(serial.size() == 3);
  CHECK(serial[0].kappa.value == 1.0);
  CHECK(serial[1].kappa.value <= 0.0);
  CHECK_FALSE(serial[2].auc.has_value());
  CHECK(serial[2].kappa.value == 1.0);
  CHECK(serial[0].truth_positive == 3);
  CHECK(serial[1].machine_positive == 3);
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(serial[c].kappa == parallel[c].kappa);
    CHECK(serial[c].auc == parallel[c].auc);
  }
}

TEST_CASE("tf-idf cosine with uniform idf reduces to count cosine") {
  const std::vector<std::string> a{"budget", "budget", "levy"};
  const std::vector<std::string> b{"budget", "levy", "levy"};
  CHECK(tfidf_cosine(a, b, {a, b}) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(tfidf_cosine(a, {"teacher"}, {a, {"teacher"}}) == 0.0);
}

TEST_CASE("tf-idf cosine by code is one for identical labels and absent for empty codes") {
  const auto cb = small_codebook();
  const auto corpus = small_corpus();
  const auto run = make_run("h", AnnotationSource::kHuman,
                            {{CodeRef::child("Funding formula")},
                             {CodeRef::child("Data access")},
                             {CodeRef::child("Data quality")},
                             {CodeRef::child("Funding")},
                             {CodeRef::child("Funding formula")},
                             {CodeRef::child("Data access")}});
  const auto lc = labeled_from_run(run, corpus);
  const auto universe = code_universe(cb, LabelLevel::kOriginal);
  const auto serial = tfidf_cosine_by_code(corpus, lc, lc, universe, Execution::kSerial);
  const auto parallel = tfidf_cosine_by_code(corpus, lc, lc, universe, Execution::kParallel);
  REQUIRE(serial.size() == universe.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].cosine == parallel[i].cosine);
    if (serial[i].code.is_child()) {
      REQUIRE(serial[i].cosine.has_value());
      CHECK(*serial[i].cosine == doctest::Approx(1.0));
    } else {
      CHECK_FALSE(serial[i].cosine.has_value());
    }
  }
}

TEST_CASE("sentiment confusion: identity, printed matrix and all-neutral") {
  SentimentList s;
  std::vector<std::string> ids;
  for (int i = 0; i < 10; ++i) {
    s.push_back(static_cast<Sentiment>(i % 3));
    ids.push_back("P" + std::to_string(i));
  }
  const auto same = sentiment_confusion(s, s, ids);
  CHECK(same.accuracy == 1.0);
  CHECK(same.kappa == doctest::Approx(1.0));
  CHECK(same.counts[0][1] == 0);

  const ConfusionMatrix3 printed{{{218, 4, 20}, {71, 322, 162}, {31, 31, 215}}};
  CHECK(confusion_stats(printed).accuracy == doctest::Approx(755.0 / 1074.0).epsilon(1e-12));

  SentimentList human, neutral;
  for (int i = 0; i < 9; ++i) {
    human.push_back(static_cast<Sentiment>(i % 3));
    neutral.push_back(Sentiment::kNeutral);
  }
  ids.resize(9);
  const auto flat = sentiment_confusion(neutral, human, ids);
  CHECK(flat.accuracy == doctest::Approx(1.0 / 3.0));
  CHECK(flat.kappa == doctest::Approx(0.0));
}

TEST_CASE("sentiment confusion requires a machine label wherever a human one exists") {
  const SentimentList human{Sentiment::kPositive, std::nullopt};
  const SentimentList machine{std::nullopt, Sentiment::kNegative};
  CHECK(error_code([&] { sentiment_confusion(machine, human, {"P1", "P2"}); }) ==
        Errc::kMissingAnnotation);
  const auto skip = sentiment_confusion(SentimentList{Sentiment::kPositive, std::nullopt}, human,
                                        {"P1", "P2"});
  CHECK(skip.accuracy == 1.0);
}

TEST_CASE("agreement by theme counts matches per code") {
  LabeledCorpus themes;
  themes.ids = {"P1", "P2", "P3", "P4", "P5"};
  themes.sets = {refs({"A"}), refs({"A"}), refs({"A", "B"}), refs({"A"}), {}};
  const SentimentList human{Sentiment::kPositive, Sentiment::kNegative, Sentiment::kNeutral,
                            Sentiment::kPositive, Sentiment::kPositive};
  const SentimentList machine{Sentiment::kPositive, Sentiment::kNegative, Sentiment::kNeutral,
                              Sentiment::kNegative, Sentiment::kPositive};
  const auto rows = agreement_by_theme(machine, human, themes);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].code.label == "A");
  CHECK(rows[0].paragraphs == 4);
  CHECK(rows[0].percent == doctest::Approx(75.0));
  CHECK(rows[1].percent == doctest::Approx(100.0));
}

TEST_CASE("metrics are invariant to a consistent paragraph reordering") {
  Rng rng(5);
  LabelSets m, h;
  const char* codes[] = {"A", "B", "C", "D"};
  for (int i = 0; i < 40; ++i) {
    std::vector<CodeRef> a, b;
    for (const char* c : codes) {
      if (rng.uniform() < 0.4) a.push_back(CodeRef::child(c));
      if (rng.uniform() < 0.4) b.push_back(CodeRef::child(c));
    }
    m.push_back(a);
    h.push_back(b);
  }
  std::vector<std::size_t> perm(m.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  rng.shuffle(perm);
  LabelSets mp, hp;
  for (auto i : perm) {
    mp.push_back(m[i]);
    hp.push_back(h[i]);
  }
  CHECK(hit_rate(m, h) == doctest::Approx(hit_rate(mp, hp)).epsilon(1e-12));
  CHECK(overlap_coefficients(m, h).dice ==
        doctest::Approx(overlap_coefficients(mp, hp).dice).epsilon(1e-12));
}

TEST_CASE("evaluation report serializes every section") {
  const auto cb = small_codebook();
  const auto corpus = small_corpus();
  const std::vector<std::vector<CodeRef>> human_sets{
      {CodeRef::child("Funding formula")}, {CodeRef::child("Data access")},
      {CodeRef::child("Data quality")},    {CodeRef::parent("Funding")},
      {CodeRef::child("Funding formula")}, {CodeRef::child("Data access")}};
  const std::vector<std::vector<CodeRef>> machine_sets{
      {CodeRef::child("Funding formula"), CodeRef::child("Funding")},
      {CodeRef::child("Data access")},
      {CodeRef::child("Data access")},
      {CodeRef::child("Funding")},
      {CodeRef::child("Funding formula")},
      {}};
  const auto human = make_run("human", AnnotationSource::kHuman, human_sets);
  const auto machine = make_run("llm", AnnotationSource::kLlm, machine_sets);
  EvalConfig cfg;
  cfg.bootstrap_iters = 30;
  cfg.shuffle_repeats = 20;
  const auto report = evaluate(corpus, cb, machine, human, nullptr, nullptr, cfg);
  REQUIRE(report.themes.size() == 2);
  CHECK(report.source_pair() == "llm_vs_human");
  CHECK(report.themes[0].level == LabelLevel::kOriginal);
  CHECK(report.themes[1].level == LabelLevel::kParent);
  CHECK(report.themes[1].hit_rate >= report.themes[0].hit_rate);
  const auto j = to_json(report);
  CHECK(j.contains("themes"));
  const auto csv = to_csv(report);
  CHECK(csv.rfind("metric,level,source_pair,code,value,ci_low,ci_high\n", 0) == 0);
  CHECK(csv.find("hit_rate,parent,llm_vs_human") != std::string::npos);

  cfg.exec = Execution::kSerial;
  const auto serial = evaluate(corpus, cb, machine, human, nullptr, nullptr, cfg);
  CHECK(to_csv(serial) == csv);
}
