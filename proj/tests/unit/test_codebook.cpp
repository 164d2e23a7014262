// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "support/test_support.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/error.hpp"

using namespace voicelens;

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

}  // namespace

TEST_CASE("codebook parsing") {
  const auto cb = voicelens::testing::small_codebook();
  CHECK(cb.parents() == std::vector<std::string>{"Funding", "Data"});
  CHECK(cb.children().size() == 4);
  CHECK(cb.find_child("Data access")->keywords ==
        std::vector<std::string>{"dashboard", "data access"});
  CHECK(cb.match_child("  data   ACCESS") == CodeRef::child("Data access"));
  CHECK(cb.match_parent("funding") == CodeRef::parent("Funding"));
  CHECK(cb.match_any("Funding") == CodeRef::child("Funding"));
  CHECK_FALSE(cb.match_any("Transport").has_value());
  CHECK(parent_of(cb, CodeRef::child("Data quality")) == "Data");
  CHECK(code_of([&] { parent_of(cb, CodeRef::child("Nope")); }) == Errc::kUnknownLabel);
}

TEST_CASE("codebook validation") {
  CHECK(code_of([] { parse_codebook("Parent,Child\nA,B\n"); }) == Errc::kMissingColumn);
  CHECK(code_of([] {
          parse_codebook("Parent,Child,Child_description,Key words\nA,B,,\nA,B,,\n");
        }) == Errc::kDuplicateChildLabel);
  CHECK(code_of([] { Codebook({"A"}, {ChildCode{"x", "B", "", {}}}); }) == Errc::kOrphanChild);
}

TEST_CASE("prompt CSV round trips") {
  const auto cb = voicelens::testing::small_codebook();
  CHECK(parse_codebook(codebook_to_prompt_csv(cb)) == cb);
  const auto fixture = load_codebook(voicelens::testing::fixture_dir() / "codebook.csv");
  CHECK(fixture.parents().size() == 8);
  CHECK(fixture.children().size() == 28);
  CHECK(parse_codebook(codebook_to_prompt_csv(fixture)) == fixture);
}

TEST_CASE("code universes") {
  const auto cb = voicelens::testing::small_codebook();
  const auto orig = code_universe(cb, LabelLevel::kOriginal);
  CHECK(orig.size() == 6);
  CHECK(orig.front() == CodeRef::child("Funding formula"));
  CHECK(orig.back() == CodeRef::parent("Data"));
  CHECK(code_universe(cb, LabelLevel::kOriginal, false).size() == 4);
  CHECK(code_universe(cb, LabelLevel::kParent) ==
        std::vector<CodeRef>{CodeRef::parent("Funding"), CodeRef::parent("Data")});
}
