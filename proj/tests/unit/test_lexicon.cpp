// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <doctest.h>

#include "support/test_support.hpp"
#include "voicelens/error.hpp"
#include "voicelens/lexicon.hpp"
#include "voicelens/random.hpp"

using namespace voicelens;
using namespace voicelens::lexicon;

namespace {

SentimentLexicon tiny() {
  return parse_lexicon("good\t1.9\nbad\t-2.5\nhappy\t2.7\n", "very\t0.293\nslightly\t-0.293\n",
                       "not\nnever\n", voicelens::testing::ignore_warning);
}

}  // namespace

TEST_CASE("lexicon parsing") {
  const auto lex = parse_lexicon("good\t1.9\nbad\t-2.5\n", "", "", voicelens::testing::ignore_warning);
  CHECK(lex.valence.size() == 2);
  CHECK(lex.valence.at("bad") == -2.5);

  const auto empty = parse_lexicon("", "", "");
  CHECK(score_paragraph(empty, "a good day").compound == 0.0);

  try {
    parse_lexicon("good\n", "", "");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kParseError);
    CHECK(e.detail().find("line 1") != std::string::npos);
  }
}

TEST_CASE("a repeated token overrides and warns") {
  int warnings = 0;
  const auto lex = parse_lexicon("Good\t1.0\ngood\t2.0\n", "", "",
                                 [&](const std::string&) { ++warnings; });
  CHECK(warnings == 1);
  CHECK(lex.valence.at("good") == 2.0);
}

TEST_CASE("normalization formula") {
  CHECK(normalize(2.0) == doctest::Approx(2.0 / std::sqrt(19.0)).epsilon(1e-12));
  CHECK(normalize(0.0) == 0.0);
  CHECK(score_paragraph(tiny(), "").compound == 0.0);
}

TEST_CASE("negation flips an isolated hit by the fixed scalar") {
  const auto s = score_paragraph(tiny(), "not good");
  CHECK(s.raw_sum == doctest::Approx(1.9 * -0.74).epsilon(1e-12));
  CHECK(s.compound == doctest::Approx(-0.3412).epsilon(1e-3));
  CHECK(s.hit_count == 1);
  CHECK(score_paragraph(tiny(), "it isn't good").raw_sum < 0.0);
  // Outside the three-token window.
  CHECK(score_paragraph(tiny(), "not a b c good").raw_sum == doctest::Approx(1.9));
  // Applied once however many negators appear.
  CHECK(score_paragraph(tiny(), "not never good").raw_sum == doctest::Approx(1.9 * -0.74));
}

TEST_CASE("boosters add with the valence sign and decay with distance") {
  const auto lex = tiny();
  CHECK(score_paragraph(lex, "very good").raw_sum == doctest::Approx(1.9 + 0.293));
  CHECK(score_paragraph(lex, "very bad").raw_sum == doctest::Approx(-2.5 - 0.293));
  CHECK(score_paragraph(lex, "very x good").raw_sum == doctest::Approx(1.9 + 0.293 * 0.95));
  CHECK(score_paragraph(lex, "very x y good").raw_sum == doctest::Approx(1.9 + 0.293 * 0.9));
  CHECK(score_paragraph(lex, "slightly good").raw_sum == doctest::Approx(1.9 - 0.293));
  // Negation first, then the booster follows the negated sign.
  CHECK(score_paragraph(lex, "not very good").raw_sum ==
        doctest::Approx(1.9 * -0.74 - 0.293));
}

TEST_CASE("classification cutoffs are inclusive") {
  CHECK(classify(0.05) == Sentiment::kPositive);
  CHECK(classify(-0.05) == Sentiment::kNegative);
  CHECK(classify(0.0) == Sentiment::kNeutral);
  CHECK(classify(0.0499999) == Sentiment::kNeutral);
  CHECK(classify(-0.0499999) == Sentiment::kNeutral);
}

TEST_CASE("compound is odd, bounded and strictly increasing in the raw sum") {
  Rng rng(3);
  double prev = -1.0;
  for (int i = 0; i < 200; ++i) {
    const double s = -50.0 + 0.5 * i;
    const double c = normalize(s);
    CHECK(std::abs(c) < 1.0);
    CHECK(normalize(-s) == -c);
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("adding a positive hit never decreases the compound") {
  const auto lex = tiny();
  Rng rng(17);
  const char* words[] = {"good", "bad", "happy", "not", "very", "the", "slightly", "plan"};
  for (int t = 0; t < 300; ++t) {
    std::string text;
    for (int i = 0; i < 8; ++i) text += std::string(words[rng.below(8)]) + " ";
    CHECK(score_paragraph(lex, text + "x y z good").compound >= score_paragraph(lex, text).compound);
  }
}

TEST_CASE("corpus scoring is identical in both execution modes") {
  const auto lex = load_lexicon_dir(voicelens::testing::lexicon_dir());
  const auto corpus = voicelens::testing::small_corpus(60);
  const auto a = score_corpus(lex, corpus, Execution::kSerial);
  const auto b = score_corpus(lex, corpus, Execution::kParallel);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].compound == b[i].compound);
  const auto run = annotate_corpus(lex, corpus);
  CHECK(run.kind == RunKind::kSentiment);
  CHECK(run.records.size() == corpus.size());
  CHECK(run.records[5].sentiment == classify(a[5].compound));
}
