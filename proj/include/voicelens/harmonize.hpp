// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Puts label sets from every source on a common footing: corpus-ordered
// label sets, optional mapping to parent codes, and one-hot matrices.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voicelens/annotation.hpp"
#include "voicelens/codebook.hpp"
#include "voicelens/corpus.hpp"

namespace voicelens {

struct LabeledCorpus {
  LabelLevel level = LabelLevel::kOriginal;
  AnnotationSource source = AnnotationSource::kHuman;
  std::string run_id;
  std::vector<std::string> ids;             // corpus order
  std::vector<std::vector<CodeRef>> sets;   // aligned to ids, 0..3 labels each

  std::size_t size() const { return ids.size(); }
  bool operator==(const LabeledCorpus&) const = default;
};

// Label sets of a thematic run laid out in corpus order. Paragraphs the run
// has no record for (failed or skipped) get an empty set. Throws
// kInvalidArgument if the run names a paragraph outside the corpus.
LabeledCorpus labeled_from_run(const AnnotationRun& run, const Corpus& corpus);

// Maps every label to its parent code and removes duplicates, first
// occurrence first. Already parent-level input is returned unchanged.
// Throws kUnknownLabel.
LabeledCorpus to_parent_level(const LabeledCorpus& lc, const Codebook& cb);

// Drops labels that are not in `universe` (e.g. parent-only labels when the
// original-level universe excludes them).
LabeledCorpus restrict_to(const LabeledCorpus& lc, const std::vector<CodeRef>& universe);

// Throws kShapeMismatch unless both corpora list the same ids in the same
// order at the same level.
void require_aligned(const LabeledCorpus& a, const LabeledCorpus& b);

class OneHotMatrix {
 public:
  OneHotMatrix() = default;
  OneHotMatrix(std::vector<std::string> row_ids, std::vector<CodeRef> columns);

  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<CodeRef>& columns() const { return columns_; }

  std::uint8_t at(std::size_t r, std::size_t c) const { return cells_[r * cols() + c]; }
  void set(std::size_t r, std::size_t c, std::uint8_t v) { cells_[r * cols() + c] = v; }
  const std::vector<std::uint8_t>& cells() const { return cells_; }

  bool operator==(const OneHotMatrix&) const = default;

 private:
  std::vector<std::string> row_ids_;
  std::vector<CodeRef> columns_;
  std::vector<std::uint8_t> cells_;  // row-major
};

// Throws kLabelOutsideUniverse for a label missing from `universe`.
OneHotMatrix one_hot(const LabeledCorpus& lc, const std::vector<CodeRef>& universe);

// Header `paragraph_id,<code label>...`; columns of parent-only codes at the
// original level are written "parent:<label>" when a child shares the name.
std::string one_hot_csv(const OneHotMatrix& m);

// Sentiment per paragraph in corpus order; absent where the run has none.
std::vector<std::optional<Sentiment>> sentiments_in_order(const AnnotationRun& run,
                                                          const Corpus& corpus);

}  // namespace voicelens
