// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/harmonize.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"

namespace voicelens {

LabeledCorpus labeled_from_run(const AnnotationRun& run, const Corpus& corpus) {
  LabeledCorpus lc;
  lc.source = run.source;
  lc.run_id = run.run_id;
  lc.ids.reserve(corpus.size());
  for (const auto& p : corpus.paragraphs()) lc.ids.push_back(p.id);
  lc.sets.assign(corpus.size(), {});
  for (const auto& rec : run.records) {
    const auto idx = corpus.index_of(rec.paragraph_id);
    if (!idx) {
      throw Error(Errc::kInvalidArgument,
                  "run '" + run.run_id + "' labels unknown paragraph '" + rec.paragraph_id + "'");
    }
    lc.sets[*idx] = compact_labels(rec.labels);
  }
  return lc;
}

LabeledCorpus to_parent_level(const LabeledCorpus& lc, const Codebook& cb) {
  LabeledCorpus out = lc;
  out.level = LabelLevel::kParent;
  for (auto& set : out.sets) {
    std::vector<CodeRef> mapped;
    mapped.reserve(set.size());
    for (const auto& ref : set) {
      auto parent = CodeRef::parent(parent_of(cb, ref));
      if (std::find(mapped.begin(), mapped.end(), parent) == mapped.end()) {
        mapped.push_back(std::move(parent));
      }
    }
    set = std::move(mapped);
  }
  return out;
}

LabeledCorpus restrict_to(const LabeledCorpus& lc, const std::vector<CodeRef>& universe) {
  const std::set<CodeRef> allowed(universe.begin(), universe.end());
  LabeledCorpus out = lc;
  for (auto& set : out.sets) {
    std::erase_if(set, [&](const CodeRef& r) { return !allowed.count(r); });
  }
  return out;
}

void require_aligned(const LabeledCorpus& a, const LabeledCorpus& b) {
  if (a.level != b.level) throw Error(Errc::kShapeMismatch, "label levels differ");
  if (a.ids != b.ids) throw Error(Errc::kShapeMismatch, "paragraph lists differ");
}

OneHotMatrix::OneHotMatrix(std::vector<std::string> row_ids, std::vector<CodeRef> columns)
    : row_ids_(std::move(row_ids)),
      columns_(std::move(columns)),
      cells_(row_ids_.size() * columns_.size(), 0) {}

OneHotMatrix one_hot(const LabeledCorpus& lc, const std::vector<CodeRef>& universe) {
  std::map<CodeRef, std::size_t> col;
  for (std::size_t c = 0; c < universe.size(); ++c) col.emplace(universe[c], c);
  OneHotMatrix m(lc.ids, universe);
  for (std::size_t r = 0; r < lc.size(); ++r) {
    for (const auto& ref : lc.sets[r]) {
      const auto it = col.find(ref);
      if (it == col.end()) {
        throw Error(Errc::kLabelOutsideUniverse,
                    lc.ids[r] + ": " + to_string(ref) + " is not a column");
      }
      m.set(r, it->second, 1);
    }
  }
  return m;
}

std::string one_hot_csv(const OneHotMatrix& m) {
  std::set<std::string> child_names;
  for (const auto& c : m.columns()) {
    if (c.is_child()) child_names.insert(c.label);
  }
  std::vector<std::string> header{"paragraph_id"};
  for (const auto& c : m.columns()) {
    header.push_back(!c.is_child() && child_names.count(c.label) ? "parent:" + c.label : c.label);
  }
  std::string out = csv::format_row(header);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row{m.row_ids()[r]};
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c) ? "1" : "0");
    out += csv::format_row(row);
  }
  return out;
}

std::vector<std::optional<Sentiment>> sentiments_in_order(const AnnotationRun& run,
                                                          const Corpus& corpus) {
  std::vector<std::optional<Sentiment>> out(corpus.size());
  for (const auto& rec : run.records) {
    const auto idx = corpus.index_of(rec.paragraph_id);
    if (!idx) {
      throw Error(Errc::kInvalidArgument,
                  "run '" + run.run_id + "' labels unknown paragraph '" + rec.paragraph_id + "'");
    }
    out[*idx] = rec.sentiment;
  }
  return out;
}

}  // namespace voicelens
