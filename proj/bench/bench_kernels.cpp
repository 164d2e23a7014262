// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference against OpenMP kernels. The second benchmark argument
// selects the variant: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <string>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/lda.hpp"
#include "voicelens/lexicon.hpp"
#include "voicelens/llm_annotator.hpp"
#include "voicelens/metrics.hpp"

using namespace voicelens;

namespace {

const std::filesystem::path kData = VOICELENS_SOURCE_DIR "/data";

struct Fixture {
  Corpus corpus;
  Codebook cb;
  LabeledCorpus machine, human;
  OneHotMatrix m, h;
  std::vector<CodeRef> universe;
  lexicon::SentimentLexicon lex;
  lda::DocTermMatrix dtm;
  lda::TopicModel model;

  Fixture() {
    const auto quiet = [](const std::string&) {};
    corpus = load_corpus(kData / "fixture/corpus.csv", CorpusFormat::kCsv, quiet);
    cb = load_codebook(kData / "fixture/codebook.csv");
    const auto labels = load_human_labels(kData / "fixture/human_labels.csv", cb);
    auto mock = llm::mock_keyword_annotator(cb);
    const auto run = llm::annotate_corpus(*mock, corpus, cb, llm::AnnotatorConfig{}, "llm", quiet);
    machine = labeled_from_run(run, corpus);
    human = labeled_from_run(labels.themes, corpus);
    universe = code_universe(cb, LabelLevel::kOriginal);
    m = one_hot(machine, universe);
    h = one_hot(human, universe);
    lex = lexicon::load_lexicon_dir(kData / "lexicon", quiet);
    dtm = lda::build_dtm(corpus, lda::DtmOptions{});
    lda::FitConfig fit;
    fit.num_topics = 8;
    fit.iterations = 100;
    fit.burn_in = 50;
    model = lda::fit_lda(dtm, fit);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

Execution variant(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::kSerial : Execution::kParallel;
}

void BM_PooledBootstrap(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::pooled_matrix_metrics(f.m, f.h, 200, 2024, variant(state)));
  }
}
BENCHMARK(BM_PooledBootstrap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CodewiseBootstrap(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::codewise_metrics(f.m, f.h, 200, 2024, variant(state)));
  }
}
BENCHMARK(BM_CodewiseBootstrap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TfidfCosine(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        metrics::tfidf_cosine_by_code(f.corpus, f.machine, f.human, f.universe, variant(state)));
  }
}
BENCHMARK(BM_TfidfCosine)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LexiconScore(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lexicon::score_corpus(f.lex, f.corpus, variant(state)));
  }
}
BENCHMARK(BM_LexiconScore)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_TopicDiagnostics(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lda::semantic_coherence(f.model, f.dtm, 10, variant(state)));
    benchmark::DoNotOptimize(lda::exclusivity(f.model, 10, 0.7, variant(state)));
  }
}
BENCHMARK(BM_TopicDiagnostics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SearchK(benchmark::State& state) {
  const auto& f = fixture();
  lda::SearchConfig search;
  search.fit.iterations = 60;
  search.fit.burn_in = 30;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lda::search_k(f.dtm, {2, 4, 8}, search, variant(state)));
  }
}
BENCHMARK(BM_SearchK)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
