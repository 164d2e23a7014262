// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <json.hpp>

#include "support/pipeline_fixture.hpp"
#include "support/test_support.hpp"
#include "voicelens/error.hpp"
#include "voicelens/pipeline.hpp"
#include "voicelens/text.hpp"

using namespace voicelens;
using voicelens::testing::fixture_dir;
using voicelens::testing::fixture_pipeline;
using voicelens::testing::ignore_warning;
using voicelens::testing::ScratchDir;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::kInvalidArgument;
}

PipelineOptions quiet() {
  PipelineOptions o;
  o.warn = ignore_warning;
  return o;
}

}  // namespace

TEST_CASE("configuration parsing") {
  const auto c = fixture_pipeline("/tmp/out");
  CHECK(c.llm_enabled);
  CHECK(c.llm.seed == std::optional<std::uint64_t>(11));
  CHECK(c.lda_fit.num_topics == 8);
  CHECK(c.lda_search_k == std::vector<int>{2, 4, 8});
  CHECK(c.corpus_path == fixture_dir() / "corpus.csv");
  CHECK(c.eval.bootstrap_iters == 200);
  CHECK(c.stages.size() == 5);
  CHECK(c.to_json()["ingest"]["corpus"] == "corpus.csv");
  CHECK_FALSE(c.to_json().contains("output_dir"));

  const std::string base = "[general]\noutput_dir = out\n[ingest]\ncorpus = c.csv\ncodebook = b.csv\n";
  CHECK_NOTHROW(PipelineConfig::parse(base, "/x"));
  CHECK(code_of([&] { PipelineConfig::parse(base + "[nope]\na = 1\n", "/x"); }) == Errc::kParseError);
  CHECK(code_of([&] { PipelineConfig::parse(base + "[lda]\ntopics = 3\n", "/x"); }) ==
        Errc::kParseError);
  CHECK(code_of([&] { PipelineConfig::parse(base + "[llm]\ntemperature = 2\n", "/x"); }) ==
        Errc::kInvalidArgument);
  CHECK(code_of([&] { PipelineConfig::parse(base + "[pipeline]\nstages = ingest,paint\n", "/x"); }) ==
        Errc::kParseError);
  CHECK(code_of([] { PipelineConfig::parse("[ingest]\ncorpus = c.csv\n", "/x"); }) ==
        Errc::kParseError);
}

TEST_CASE("fixture pipeline writes every artifact") {
  ScratchDir dir("pipeline");
  const auto result = run_pipeline(fixture_pipeline(dir.path()), quiet());
  CHECK(result.ran.size() == 5);
  for (const char* f : {"ingest/corpus.jsonl", "runs/llm.thematic.jsonl", "runs/lda.thematic.jsonl",
                        "runs/lexicon.sentiment.jsonl", "lda/diagnostics.csv",
                        "harmonized/llm.parent.csv", "eval/llm_vs_human.json",
                        "eval/lexicon_vs_human.csv", "report/frequency.human.csv",
                        "manifest.json", "checkpoint.json"}) {
    CHECK_MESSAGE(std::filesystem::exists(dir.path() / f), std::string(f));
  }
  const auto manifest = nlohmann::json::parse(read_file(result.manifest));
  CHECK(manifest["inputs"]["corpus"]["file"] == "corpus.csv");
  CHECK(manifest["outputs"].contains("eval/llm_vs_human.json"));
  CHECK(manifest["outputs"]["eval/llm_vs_human.json"] ==
        artifact_digest(dir.path() / "eval/llm_vs_human.json"));
}

TEST_CASE("a failed stage leaves a checkpoint and resume finishes the run") {
  ScratchDir failed("pipeline-fail"), clean("pipeline-clean");
  const auto cfg = fixture_pipeline(failed.path());
  auto opts = quiet();
  opts.fail_at = "evaluate";
  CHECK(code_of([&] { run_pipeline(cfg, opts); }) == Errc::kStageFailed);
  const auto checkpoint = nlohmann::json::parse(read_file(failed.path() / "checkpoint.json"));
  CHECK(checkpoint["completed"].size() == 3);
  CHECK_FALSE(std::filesystem::exists(failed.path() / "manifest.json"));

  auto resume = quiet();
  resume.resume = true;
  const auto result = run_pipeline(cfg, resume);
  CHECK(result.skipped == std::vector<std::string>{"ingest", "annotate", "harmonize"});
  CHECK(result.ran == std::vector<std::string>{"evaluate", "report"});

  run_pipeline(fixture_pipeline(clean.path()), quiet());
  CHECK(read_file(failed.path() / "manifest.json") == read_file(clean.path() / "manifest.json"));
}

TEST_CASE("resume refuses a checkpoint written under a different configuration") {
  ScratchDir dir("pipeline-cfg");
  auto cfg = fixture_pipeline(dir.path());
  auto opts = quiet();
  opts.fail_at = "harmonize";
  CHECK_THROWS(run_pipeline(cfg, opts));
  cfg.eval.bootstrap_seed = 1;
  auto resume = quiet();
  resume.resume = true;
  CHECK(code_of([&] { run_pipeline(cfg, resume); }) == Errc::kInvalidArgument);
  // A fresh run under the new configuration replaces the stale state.
  CHECK(run_pipeline(cfg, quiet()).ran.size() == 5);
}

TEST_CASE("an injected provider replaces the configured one") {
  ScratchDir dir("pipeline-provider");
  auto cfg = fixture_pipeline(dir.path());
  cfg.lda_enabled = false;
  cfg.lexicon_enabled = false;
  auto opts = quiet();
  opts.provider = std::make_shared<llm::FunctionProvider>([](const llm::LlmRequest& r) {
    return llm::LlmResponse{r.prompt_text.find("[TextGoHere]") == std::string::npos &&
                                    r.prompt_text.rfind("Act as", 0) == 0
                                ? R"({"Sentiment":"Neutral","Reasoning":""})"
                                : R"({"Theme 1":"Community","Reasoning":""})"};
  });
  run_pipeline(cfg, opts);
  const auto run = load_run(dir.path() / "runs/llm.thematic.jsonl");
  CHECK(run.records.at(0).labels == std::vector<CodeRef>{CodeRef::child("Community")});
}
