// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance report: one PASS/FAIL line per primary criterion. Exit status is
// nonzero when any criterion fails. Tolerances and limits are the constants
// at the top of each check.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "support/oracle.hpp"
#include "support/pipeline_fixture.hpp"
#include "support/planted.hpp"
#include "support/test_support.hpp"
#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/lexicon.hpp"
#include "voicelens/llm_annotator.hpp"
#include "voicelens/metrics.hpp"
#include "voicelens/pipeline.hpp"
#include "voicelens/random.hpp"
#include "voicelens/text.hpp"

using namespace voicelens;
namespace oracle = voicelens::testing::oracle;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

void quiet(const std::string&) {}

// ---- metric oracle --------------------------------------------------------

std::vector<CodeRef> to_refs(const oracle::Set& s) {
  std::vector<CodeRef> out;
  for (int x : s) out.push_back(CodeRef::child(std::string(1, static_cast<char>('A' + x))));
  return out;
}

OneHotMatrix to_matrix(const std::vector<oracle::Set>& sets, int codes) {
  std::vector<std::string> ids;
  std::vector<CodeRef> cols;
  for (std::size_t i = 0; i < sets.size(); ++i) ids.push_back("R" + std::to_string(i));
  for (int c = 0; c < codes; ++c) cols.push_back(CodeRef::child(std::string(1, static_cast<char>('A' + c))));
  OneHotMatrix m(ids, cols);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (int c : sets[i]) m.set(i, static_cast<std::size_t>(c), 1);
  }
  return m;
}

Outcome metric_oracle() {
  constexpr double kTolerance = 1e-12;
  constexpr double kTimeLimit = 10.0;
  const auto t0 = Clock::now();
  std::vector<oracle::Set> subsets;
  for (int mask = 0; mask < 8; ++mask) {
    oracle::Set s;
    for (int b = 0; b < 3; ++b) {
      if (mask & (1 << b)) s.insert(b);
    }
    subsets.push_back(s);
  }
  // Every corpus of one or two paragraphs over all (machine, human) set pairs.
  std::vector<std::pair<oracle::Set, oracle::Set>> pairs;
  for (const auto& m : subsets) {
    for (const auto& h : subsets) pairs.emplace_back(m, h);
  }
  double max_err = 0.0;
  long corpora = 0, comparisons = 0;
  bool mismatch_in_definedness = false;
  const auto compare = [&](double got, double want) {
    max_err = std::max(max_err, std::abs(got - want));
    ++comparisons;
  };
  const auto check_corpus = [&](const std::vector<oracle::Set>& ms, const std::vector<oracle::Set>& hs) {
    ++corpora;
    metrics::LabelSets lm, lh;
    for (const auto& s : ms) lm.push_back(to_refs(s));
    for (const auto& s : hs) lh.push_back(to_refs(s));
    const auto hr = oracle::hit_rate(ms, hs);
    try {
      const double got = metrics::hit_rate(lm, lh);
      if (hr.eligible == 0) mismatch_in_definedness = true;
      else compare(got, hr.value());
    } catch (const Error&) {
      if (hr.eligible != 0) mismatch_in_definedness = true;
    }
    const auto ov = oracle::overlap(ms, hs);
    try {
      const auto got = metrics::overlap_coefficients(lm, lh);
      if (ov.simpson.eligible == 0) {
        mismatch_in_definedness = true;
      } else {
        compare(got.simpson, ov.simpson.value());
        compare(got.dice, ov.dice.value());
        compare(got.jaccard, ov.jaccard.value());
      }
    } catch (const Error&) {
      if (ov.simpson.eligible != 0) mismatch_in_definedness = true;
    }
    const auto mc = oracle::micro(ms, hs, 3);
    const auto prf = metrics::micro_prf(to_matrix(ms, 3), to_matrix(hs, 3));
    compare(prf.precision, mc.precision().value());
    compare(prf.recall, mc.recall().value());
    compare(prf.f1, mc.f1().value());
  };
  for (const auto& [m, h] : pairs) check_corpus({m}, {h});
  for (const auto& [m1, h1] : pairs) {
    for (const auto& [m2, h2] : pairs) check_corpus({m1, m2}, {h1, h2});
  }
  const double elapsed = seconds_since(t0);
  const bool pass = !mismatch_in_definedness && max_err <= kTolerance && elapsed < kTimeLimit;
  return {pass, fmt("%ld corpora, %ld comparisons, max |diff| %.2e, definedness %s, %.2f s "
                    "(tolerance %.0e, limit %.0f s)",
                    corpora, comparisons, max_err, mismatch_in_definedness ? "MISMATCH" : "agrees",
                    elapsed, kTolerance, kTimeLimit)};
}

// ---- kappa / AUC hand cases -------------------------------------------------

Outcome kappa_auc_cases() {
  constexpr double kHandTolerance = 1e-12;
  constexpr double kTableTolerance = 1e-9;
  using V = std::vector<std::uint8_t>;
  const V truth{1, 1, 0, 0};
  const double k0 = metrics::cohen_kappa(V{1, 0, 1, 0}, truth);
  const double k5 = metrics::cohen_kappa(V{1, 1, 0, 1}, truth);
  const double auc = metrics::auc_binary(V{1, 0, 1, 0}, truth);
  const metrics::ConfusionMatrix3 printed{{{218, 4, 20}, {71, 322, 162}, {31, 31, 215}}};
  const auto stats = metrics::confusion_stats(printed);
  const double want = 755.0 / 1074.0;
  const bool pass = std::abs(k0) <= kHandTolerance && std::abs(k5 - 0.5) <= kHandTolerance &&
                    std::abs(auc - 0.5) <= kHandTolerance &&
                    std::abs(stats.accuracy - want) <= kTableTolerance;
  return {pass, fmt("kappa %.15g / %.15g, AUC %.15g, printed-matrix accuracy %.10f vs 755/1074 "
                    "(kappa %.4f; stated text value 0.58 is inconsistent with the cells)",
                    k0, k5, auc, stats.accuracy, stats.kappa)};
}

// ---- overlap ordering -------------------------------------------------------

Outcome overlap_ordering() {
  constexpr int kPairs = 10000;
  Rng rng(20260101);
  int violations = 0;
  for (int i = 0; i < kPairs; ++i) {
    std::vector<CodeRef> m, h;
    const auto draw = [&](std::vector<CodeRef>& out) {
      const std::size_t n = 1 + rng.below(5);
      std::set<int> s;
      while (s.size() < n) s.insert(static_cast<int>(rng.below(8)));
      for (int x : s) out.push_back(CodeRef::child("C" + std::to_string(x)));
    };
    draw(m);
    draw(h);
    const auto o = metrics::overlap_pair(m, h);
    if (!(o.simpson >= o.dice && o.dice >= o.jaccard)) ++violations;
  }
  return {violations == 0, fmt("%d pairs, %d violations", kPairs, violations)};
}

// ---- shuffled baseline ------------------------------------------------------

Outcome shuffled_baseline() {
  constexpr double kExpected = 10.0;
  constexpr double kTolerance = 3.0;
  constexpr int kRepeats = 100;
  constexpr std::uint64_t kSeed = 2024;
  constexpr double kTimeLimit = 30.0;
  const auto t0 = Clock::now();
  const auto records = csv::parse(read_file(voicelens::testing::fixture_dir() / "shuffle_500.csv"));
  metrics::LabelSets human;
  std::set<std::string> codes;
  for (std::size_t r = 1; r < records.size(); ++r) {
    human.push_back({CodeRef::child(records[r].fields.at(1))});
    codes.insert(records[r].fields.at(1));
  }
  const auto machine = human;
  const double hit = metrics::hit_rate(machine, human);
  const double shuffled = metrics::shuffled_hit_rate(machine, human, kSeed, kRepeats);
  const double elapsed = seconds_since(t0);
  const bool pass = human.size() == 500 && codes.size() == 10 && hit == 100.0 &&
                    std::abs(shuffled - kExpected) <= kTolerance && elapsed < kTimeLimit;
  return {pass, fmt("%zu paragraphs, %zu codes, hit %.2f%%, shuffled %.2f%% (want %.0f +/- %.0f), "
                    "%.2f s (limit %.0f s)",
                    human.size(), codes.size(), hit, shuffled, kExpected, kTolerance, elapsed,
                    kTimeLimit)};
}

// ---- bootstrap --------------------------------------------------------------

Outcome bootstrap_calibration() {
  constexpr int kIters = 100;
  constexpr double kTolerance = 0.01;
  const auto dir = voicelens::testing::fixture_dir();
  const auto corpus = load_corpus(dir / "corpus.csv", CorpusFormat::kCsv, quiet);
  const auto cb = load_codebook(dir / "codebook.csv");
  const auto human = load_human_labels(dir / "human_labels.csv", cb);
  auto mock = llm::mock_keyword_annotator(cb);
  const auto machine = llm::annotate_corpus(*mock, corpus, cb, llm::AnnotatorConfig{}, "llm", quiet);
  metrics::EvalConfig cfg;
  cfg.bootstrap_iters = kIters;
  const auto a = metrics::to_json(metrics::evaluate(corpus, cb, machine, human.themes, nullptr, nullptr, cfg)).dump();
  const auto b = metrics::to_json(metrics::evaluate(corpus, cb, machine, human.themes, nullptr, nullptr, cfg)).dump();
  cfg.exec = Execution::kSerial;
  const auto serial_json = metrics::to_json(metrics::evaluate(corpus, cb, machine, human.themes, nullptr, nullptr, cfg));
  const bool serial_same = serial_json.dump() == a;

  // 500 ones and 500 zeros in shuffled order: a Bernoulli(0.5) sample whose
  // sample mean is exactly 0.5.
  std::vector<double> x(1000, 0.0);
  for (int i = 0; i < 500; ++i) x[i] = 1.0;
  Rng rng(7);
  rng.shuffle(x);
  const auto v = metrics::bootstrap(
      x.size(),
      [&](std::span<const std::size_t> idx) {
        double s = 0;
        for (auto i : idx) s += x[i];
        return s / static_cast<double>(idx.size());
      },
      kIters, 2024);
  const bool ci_ok = std::abs(*v.ci_low - 0.47) <= kTolerance && std::abs(*v.ci_high - 0.53) <= kTolerance;
  const bool pass = a == b && serial_same && ci_ok;
  return {pass, fmt("report bytes identical across runs: %s, serial == parallel: %s; Bernoulli(0.5) "
                    "n=1000 CI [%.4f, %.4f] (want [0.47, 0.53] +/- %.2f, %d iterations)",
                    a == b ? "yes" : "no", serial_same ? "yes" : "no", *v.ci_low, *v.ci_high,
                    kTolerance, kIters)};
}

// ---- LDA recovery -----------------------------------------------------------

Outcome lda_recovery() {
  constexpr double kCosine = 0.9;
  constexpr int kSeeds = 20;
  constexpr int kRequiredSeeds = 19;
  constexpr double kRankShare = 0.95;
  constexpr double kTimeLimit = 300.0;
  const auto t0 = Clock::now();
  std::string per_k;
  bool pass = true;
  int ranked = 0, runs = 0;
  double worst = 1.0;
  for (const int k : {2, 3, 5}) {
    int recovered = 0;
    for (int s = 0; s < kSeeds; ++s) {
      voicelens::testing::PlantedOptions o;
      o.k = k;
      o.v = 50;
      o.d = 500;
      const auto pc = voicelens::testing::planted_corpus(o, 1000 + 100 * k + s);
      lda::FitConfig fit;
      fit.num_topics = k;
      fit.iterations = 400;
      fit.burn_in = 200;
      fit.seed = static_cast<std::uint64_t>(s + 1);
      const auto model = lda::fit_lda(pc.dtm, fit);
      const auto cos = voicelens::testing::aligned_cosines(pc, model);
      const double min_cos = *std::min_element(cos.begin(), cos.end());
      worst = std::min(worst, min_cos);
      recovered += min_cos >= kCosine;

      lda::SearchConfig search;
      search.fit = fit;
      search.fit.alpha.reset();
      const auto rows = lda::search_k(pc.dtm, {1, k}, search);
      ranked += rows[1].heldout_loglik > rows[0].heldout_loglik;
      ++runs;
    }
    pass &= recovered >= kRequiredSeeds;
    per_k += fmt("K=%d %d/%d, ", k, recovered, kSeeds);
  }
  const double share = static_cast<double>(ranked) / runs;
  const double elapsed = seconds_since(t0);
  pass &= share >= kRankShare && elapsed < kTimeLimit;
  return {pass, fmt("recovered (all topics cosine >= %.1f) %sworst cosine %.4f; held-out ranks "
                    "K_true above K=1 in %d/%d runs (need %.0f%%); %.1f s (limit %.0f s)",
                    kCosine, per_k.c_str(), worst, ranked, runs, kRankShare * 100, elapsed,
                    kTimeLimit)};
}

// ---- lexicon ----------------------------------------------------------------

Outcome lexicon_scorer() {
  constexpr double kFormulaTolerance = 1e-12;
  constexpr double kParityTolerance = 0.05;
  Rng rng(99);
  double max_formula = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = (rng.uniform() - 0.5) * 40.0;
    max_formula = std::max(max_formula, std::abs(lexicon::normalize(s) - s / std::sqrt(s * s + 15.0)));
  }
  const bool cutoffs = lexicon::classify(0.05) == Sentiment::kPositive &&
                       lexicon::classify(-0.05) == Sentiment::kNegative &&
                       lexicon::classify(std::nextafter(0.05, 0.0)) == Sentiment::kNeutral &&
                       lexicon::classify(std::nextafter(-0.05, 0.0)) == Sentiment::kNeutral;

  const auto lex = lexicon::load_lexicon_dir(voicelens::testing::lexicon_dir(), quiet);
  const auto rows = csv::parse([] {
    // Tab-separated; convert to the CSV reader's delimiter.
    auto t = read_file(voicelens::testing::test_data("lexicon_sentences.tsv"));
    std::string out;
    for (const auto& line : split(t, '\n')) {
      if (line.empty()) continue;
      std::vector<std::string> fields = split(line, '\t');
      out += csv::format_row(fields);
    }
    return out;
  }());
  std::map<std::string, std::map<std::string, double>> groups;
  int parity_rows = 0, parity_ok = 0, sentences = 0;
  double max_parity = 0.0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    const double ours = lexicon::score_paragraph(lex, f.at(4)).compound;
    groups[f.at(0)][f.at(1)] = ours;
    ++sentences;
    if (f.at(2) == "1") {
      ++parity_rows;
      const double diff = std::abs(ours - std::stod(f.at(3)));
      max_parity = std::max(max_parity, diff);
      parity_ok += diff <= kParityTolerance;
    }
  }
  int monotone_ok = 0;
  for (const auto& [g, v] : groups) {
    const double base = v.at("base"), neg = v.at("negated"), boost = v.at("boosted");
    const bool negation_flips = base * neg < 0.0;
    const bool booster_grows = base * boost > 0.0 && std::abs(boost) > std::abs(base);
    monotone_ok += negation_flips && booster_grows;
  }
  const bool pass = max_formula <= kFormulaTolerance && cutoffs && sentences == 30 &&
                    monotone_ok == static_cast<int>(groups.size()) && parity_ok == parity_rows;
  return {pass, fmt("formula max |diff| %.2e on 1000 sums; cutoffs %s; negation/booster properties "
                    "%d/%zu groups; parity %d/%d sentences within %.2f (max |diff| %.4f)",
                    max_formula, cutoffs ? "exact" : "WRONG", monotone_ok, groups.size(), parity_ok,
                    parity_rows, kParityTolerance, max_parity)};
}

// ---- prompt fidelity ---------------------------------------------------------

std::string replace_once(std::string text, std::string_view slot, std::string_view value) {
  const auto pos = text.find(slot);
  if (pos == std::string::npos) return "<slot " + std::string(slot) + " missing>";
  text.replace(pos, slot.size(), value);
  return text;
}

Outcome prompt_fidelity() {
  const auto dir = voicelens::testing::fixture_dir();
  const auto corpus = load_corpus(dir / "corpus.csv", CorpusFormat::kCsv, quiet);
  const auto cb = load_codebook(dir / "codebook.csv");
  auto codebook_csv = codebook_to_prompt_csv(cb);
  if (!codebook_csv.empty() && codebook_csv.back() == '\n') codebook_csv.pop_back();
  const auto cot_golden = read_file(voicelens::testing::golden("cot_thematic.txt"));
  const auto sent_golden = read_file(voicelens::testing::golden("sentiment.txt"));
  int checked = 0, matched = 0;
  for (const std::size_t i : {std::size_t{0}, std::size_t{57}, corpus.size() - 1}) {
    const auto& p = corpus.paragraphs()[i];
    const auto want_cot =
        replace_once(replace_once(cot_golden, "{codebook}", codebook_csv), "[[[TEXTGOHERE]]]", p.text);
    const auto want_sent = replace_once(sent_golden, "[TextGoHere]", p.text);
    matched += llm::build_thematic_prompt(cb, p, llm::PromptStyle::kCoTThematic) == want_cot;
    matched += llm::build_sentiment_prompt(p) == want_sent;
    checked += 2;
  }
  return {matched == checked, fmt("%d/%d prompts byte-identical to the golden templates", matched, checked)};
}

// ---- end-to-end reproducibility ---------------------------------------------

Outcome end_to_end() {
  voicelens::testing::ScratchDir a("accept-a"), b("accept-b");
  PipelineOptions opts;
  opts.warn = quiet;
  run_pipeline(voicelens::testing::fixture_pipeline(a.path()), opts);
  run_pipeline(voicelens::testing::fixture_pipeline(b.path()), opts);
  const bool manifest_same = read_file(a.path() / "manifest.json") == read_file(b.path() / "manifest.json");
  const bool report_same =
      read_file(a.path() / "eval/llm_vs_human.json") == read_file(b.path() / "eval/llm_vs_human.json");

  const auto dir = voicelens::testing::fixture_dir();
  const auto corpus = load_corpus(dir / "corpus.csv", CorpusFormat::kCsv, quiet);
  const auto cb = load_codebook(dir / "codebook.csv");
  auto mock = llm::mock_keyword_annotator(cb);
  const double repro = llm::reproducibility_check(*mock, corpus, cb, llm::AnnotatorConfig{}, 50, 2, 1, quiet);
  return {manifest_same && report_same && repro == 1.0,
          fmt("manifest identical: %s, EvalReport identical: %s, reproducibility_check = %.4f",
              manifest_same ? "yes" : "no", report_same ? "yes" : "no", repro)};
}

// ---- parent-level dominance ---------------------------------------------------

Outcome parent_dominance() {
  constexpr int kFixtures = 50;
  constexpr double kNoise = 0.3;
  const auto dir = voicelens::testing::fixture_dir();
  const auto corpus = load_corpus(dir / "corpus.csv", CorpusFormat::kCsv, quiet);
  const auto cb = load_codebook(dir / "codebook.csv");
  const auto human = load_human_labels(dir / "human_labels.csv", cb).themes;
  const auto h_orig = labeled_from_run(human, corpus);
  const auto h_parent = to_parent_level(h_orig, cb);
  int dominated = 0;
  double min_gap = 1e9;
  for (int f = 0; f < kFixtures; ++f) {
    Rng rng(5000 + f);
    auto machine = human;
    machine.run_id = "noisy";
    machine.source = AnnotationSource::kLlm;
    for (auto& rec : machine.records) {
      for (auto& label : rec.labels) {
        if (rng.uniform() < kNoise) label = CodeRef::child(cb.children()[rng.below(cb.children().size())].label);
      }
      rec.labels = compact_labels(rec.labels);
    }
    const auto m_orig = labeled_from_run(machine, corpus);
    const double child = metrics::hit_rate(m_orig, h_orig);
    const double parent = metrics::hit_rate(to_parent_level(m_orig, cb), h_parent);
    dominated += parent >= child;
    min_gap = std::min(min_gap, parent - child);
  }
  return {dominated == kFixtures,
          fmt("%d/%d noise fixtures with parent-level hit rate >= original-level (min gap %.2f "
              "points, noise %.0f%% per label)",
              dominated, kFixtures, min_gap, kNoise * 100)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
      {"metric_oracle_equivalence", metric_oracle},
      {"kappa_auc_hand_cases", kappa_auc_cases},
      {"overlap_ordering_property", overlap_ordering},
      {"shuffled_baseline_separation", shuffled_baseline},
      {"bootstrap_determinism_calibration", bootstrap_calibration},
      {"lda_planted_recovery", lda_recovery},
      {"lexicon_scorer", lexicon_scorer},
      {"prompt_fidelity", prompt_fidelity},
      {"end_to_end_reproducibility", end_to_end},
      {"parent_level_dominance", parent_dominance},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
