// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>

#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"

namespace voicelens::report {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

LabeledCorpus subset(const LabeledCorpus& lc, const std::vector<std::size_t>& rows) {
  LabeledCorpus out;
  out.level = lc.level;
  out.source = lc.source;
  out.run_id = lc.run_id;
  for (const auto r : rows) {
    out.ids.push_back(lc.ids[r]);
    out.sets.push_back(lc.sets[r]);
  }
  return out;
}

std::map<RoleGroup, std::vector<std::size_t>> rows_by_role(const LabeledCorpus& lc,
                                                           const Corpus& corpus) {
  if (lc.size() != corpus.size()) {
    throw Error(Errc::kShapeMismatch, "labeled corpus does not match the corpus");
  }
  std::map<RoleGroup, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out[corpus.paragraphs()[i].role_group].push_back(i);
  }
  return out;
}

}  // namespace

FrequencyTable frequency_report(const LabeledCorpus& lc, const Codebook& cb) {
  std::map<std::string, int> child_count, parent_only;
  FrequencyTable table;
  table.group = "all";
  for (const auto& set : lc.sets) {
    for (const auto& ref : set) {
      if (!cb.contains(ref)) throw Error(Errc::kUnknownLabel, to_string(ref));
      ++(ref.is_child() ? child_count : parent_only)[ref.label];
      ++table.total_labels;
    }
  }
  if (table.total_labels == 0) return table;
  const double total = table.total_labels;
  const auto pct = [&](int n) { return 100.0 * n / total; };
  std::set<std::string> parents_with_children;
  for (const auto& child : cb.children()) {
    const auto it = child_count.find(child.label);
    if (it == child_count.end()) continue;
    const int p = parent_only.count(child.parent_label) ? parent_only[child.parent_label] : 0;
    table.rows.push_back({child.parent_label, pct(p), child.label, pct(it->second), it->second, p});
    parents_with_children.insert(child.parent_label);
  }
  for (const auto& parent : cb.parents()) {
    const auto it = parent_only.find(parent);
    if (it == parent_only.end() || parents_with_children.count(parent)) continue;
    table.rows.push_back({parent, pct(it->second), "", 0.0, 0, it->second});
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const FrequencyRow& a, const FrequencyRow& b) {
                     return a.child_pct > b.child_pct;
                   });
  return table;
}

std::vector<FrequencyTable> frequency_by_role(const LabeledCorpus& lc, const Codebook& cb,
                                              const Corpus& corpus) {
  std::vector<FrequencyTable> out;
  for (const auto& [role, rows] : rows_by_role(lc, corpus)) {
    auto table = frequency_report(subset(lc, rows), cb);
    table.group = std::string(to_string(role));
    out.push_back(std::move(table));
  }
  return out;
}

std::string frequency_csv(const std::vector<FrequencyTable>& tables) {
  std::string out = csv::format_row(
      {"group", "parent_label", "parent_pct", "child_label", "child_pct", "child_count",
       "parent_only_count", "total_labels"});
  for (const auto& t : tables) {
    for (const auto& r : t.rows) {
      out += csv::format_row({t.group, r.parent_label, fmt(r.parent_pct), r.child_label,
                              fmt(r.child_pct), std::to_string(r.child_count),
                              std::to_string(r.parent_count), std::to_string(t.total_labels)});
    }
  }
  return out;
}

SentimentTable sentiment_report(const metrics::SentimentList& sentiment,
                                const LabeledCorpus& themes) {
  if (sentiment.size() != themes.size()) {
    throw Error(Errc::kLengthMismatch, "sentiment and theme lists differ in length");
  }
  SentimentTable table;
  table.group = "all";
  std::map<CodeRef, std::size_t> row_of;
  std::vector<std::array<int, 3>> counts;
  for (std::size_t i = 0; i < themes.size(); ++i) {
    if (!sentiment[i]) continue;
    std::set<CodeRef> seen;
    for (const auto& ref : themes.sets[i]) {
      if (!seen.insert(ref).second) continue;
      auto [it, inserted] = row_of.try_emplace(ref, table.rows.size());
      if (inserted) {
        table.rows.push_back({ref});
        counts.push_back({0, 0, 0});
      }
      ++counts[it->second][static_cast<int>(*sentiment[i])];
    }
  }
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& c = counts[r];
    const int n = c[0] + c[1] + c[2];
    auto& row = table.rows[r];
    row.paragraphs = n;
    row.positive = static_cast<double>(c[0]) / n;
    row.negative = static_cast<double>(c[1]) / n;
    row.neutral = static_cast<double>(c[2]) / n;
  }
  return table;
}

std::vector<SentimentTable> sentiment_by_role(const metrics::SentimentList& sentiment,
                                              const LabeledCorpus& themes, const Corpus& corpus) {
  std::vector<SentimentTable> out;
  for (const auto& [role, rows] : rows_by_role(themes, corpus)) {
    metrics::SentimentList s;
    for (const auto r : rows) s.push_back(sentiment.at(r));
    auto table = sentiment_report(s, subset(themes, rows));
    table.group = std::string(to_string(role));
    out.push_back(std::move(table));
  }
  return out;
}

std::string sentiment_csv(const std::vector<SentimentTable>& tables) {
  std::string out = csv::format_row(
      {"group", "level", "code", "paragraphs", "positive", "negative", "neutral"});
  for (const auto& t : tables) {
    for (const auto& r : t.rows) {
      out += csv::format_row({t.group, std::string(to_string(r.code.level)), r.code.label,
                              std::to_string(r.paragraphs), fmt(r.positive), fmt(r.negative),
                              fmt(r.neutral)});
    }
  }
  return out;
}

}  // namespace voicelens::report
