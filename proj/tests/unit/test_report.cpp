// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "support/test_support.hpp"
#include "voicelens/harmonize.hpp"
#include "voicelens/report.hpp"

using namespace voicelens;
using namespace voicelens::report;
using voicelens::testing::make_run;
using voicelens::testing::small_codebook;
using voicelens::testing::small_corpus;

TEST_CASE("frequencies are shares of all assigned labels") {
  const auto cb = small_codebook();
  const auto corpus = small_corpus(3);
  const auto lc = labeled_from_run(
      make_run("h", AnnotationSource::kHuman,
               {{CodeRef::child("Data access"), CodeRef::child("Funding")},
                {CodeRef::child("Data access")},
                {CodeRef::parent("Funding")}}),
      corpus);
  const auto t = frequency_report(lc, cb);
  CHECK(t.total_labels == 4);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].child_label == "Data access");
  CHECK(t.rows[0].child_pct == doctest::Approx(50.0));
  CHECK(t.rows[1].child_label == "Funding");
  CHECK(t.rows[1].parent_pct == doctest::Approx(25.0));
  double sum = 0;
  for (const auto& r : t.rows) sum += r.child_pct;
  CHECK(sum + t.rows[1].parent_pct <= 100.0 + 0.1);
}

TEST_CASE("empty labels give an empty table; roles partition the labels") {
  const auto cb = small_codebook();
  const auto corpus = small_corpus(3);
  const auto empty = labeled_from_run(make_run("h", AnnotationSource::kHuman, {{}, {}, {}}), corpus);
  CHECK(frequency_report(empty, cb).rows.empty());

  // P2 is the only Educator paragraph.
  const auto lc = labeled_from_run(make_run("h", AnnotationSource::kHuman,
                                            {{CodeRef::child("Funding")},
                                             {CodeRef::child("Data quality")},
                                             {CodeRef::child("Funding")}}),
                                   corpus);
  for (const auto& table : frequency_by_role(lc, cb, corpus)) {
    bool has_quality = false;
    for (const auto& r : table.rows) has_quality |= r.child_label == "Data quality";
    CHECK(has_quality == (table.group == "Educator"));
  }
  CHECK(frequency_csv(frequency_by_role(lc, cb, corpus)).find("Educator") != std::string::npos);
}

TEST_CASE("sentiment distribution per theme") {
  const auto corpus = small_corpus(3);
  const auto lc = labeled_from_run(make_run("h", AnnotationSource::kHuman,
                                            {{CodeRef::child("Funding")},
                                             {CodeRef::child("Funding"), CodeRef::child("Data access")},
                                             {}}),
                                   corpus);
  const metrics::SentimentList s{Sentiment::kPositive, Sentiment::kNegative, Sentiment::kNeutral};
  const auto t = sentiment_report(s, lc);
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].positive == doctest::Approx(0.5));
  CHECK(t.rows[0].negative == doctest::Approx(0.5));
  CHECK(t.rows[0].neutral == 0.0);
  for (const auto& r : t.rows) {
    CHECK(r.positive + r.negative + r.neutral == doctest::Approx(1.0).epsilon(1e-9));
  }
  const metrics::SentimentList neutral(3, Sentiment::kNeutral);
  CHECK(sentiment_report(neutral, lc).rows[1].neutral == 1.0);
  CHECK(sentiment_csv({t}).find("Data access") != std::string::npos);
}
