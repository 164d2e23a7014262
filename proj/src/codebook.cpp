// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/codebook.hpp"

#include <algorithm>

#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"
#include "voicelens/text.hpp"

namespace voicelens {

std::string_view to_string(CodeLevel level) {
  return level == CodeLevel::kChild ? "child" : "parent";
}

std::optional<CodeLevel> parse_code_level(std::string_view text) {
  const auto t = to_lower_ascii(trim(text));
  if (t == "child") return CodeLevel::kChild;
  if (t == "parent") return CodeLevel::kParent;
  return std::nullopt;
}

std::string_view to_string(LabelLevel level) {
  return level == LabelLevel::kOriginal ? "original" : "parent";
}

std::optional<LabelLevel> parse_label_level(std::string_view text) {
  const auto t = to_lower_ascii(trim(text));
  if (t == "original" || t == "child") return LabelLevel::kOriginal;
  if (t == "parent") return LabelLevel::kParent;
  return std::nullopt;
}

std::string to_string(const CodeRef& ref) {
  return std::string(to_string(ref.level)) + ":" + ref.label;
}

Codebook::Codebook(std::vector<std::string> parents, std::vector<ChildCode> children)
    : parents_(std::move(parents)), children_(std::move(children)) {
  for (std::size_t i = 0; i < parents_.size(); ++i) {
    if (!parent_idx_.emplace(parents_[i], i).second) {
      throw Error(Errc::kInvalidArgument, "duplicate parent label " + parents_[i]);
    }
    parent_norm_.emplace(normalize_label(parents_[i]), i);
  }
  for (std::size_t i = 0; i < children_.size(); ++i) {
    const auto& c = children_[i];
    if (c.parent_label.empty() || !parent_idx_.count(c.parent_label)) {
      throw Error(Errc::kOrphanChild, c.label);
    }
    if (!child_idx_.emplace(c.label, i).second) throw Error(Errc::kDuplicateChildLabel, c.label);
    child_norm_.emplace(normalize_label(c.label), i);
    for (const auto& k : c.keywords) {
      if (k.empty()) throw Error(Errc::kInvalidArgument, "empty keyword on " + c.label);
    }
  }
}

bool Codebook::has_parent(std::string_view label) const {
  return parent_idx_.count(std::string(label)) > 0;
}

bool Codebook::has_child(std::string_view label) const {
  return child_idx_.count(std::string(label)) > 0;
}

const ChildCode* Codebook::find_child(std::string_view label) const {
  const auto it = child_idx_.find(std::string(label));
  return it == child_idx_.end() ? nullptr : &children_[it->second];
}

bool Codebook::contains(const CodeRef& ref) const {
  return ref.is_child() ? has_child(ref.label) : has_parent(ref.label);
}

std::optional<CodeRef> Codebook::match_child(std::string_view text) const {
  const auto it = child_norm_.find(normalize_label(text));
  if (it == child_norm_.end()) return std::nullopt;
  return CodeRef::child(children_[it->second].label);
}

std::optional<CodeRef> Codebook::match_parent(std::string_view text) const {
  const auto it = parent_norm_.find(normalize_label(text));
  if (it == parent_norm_.end()) return std::nullopt;
  return CodeRef::parent(parents_[it->second]);
}

std::optional<CodeRef> Codebook::match_any(std::string_view text) const {
  if (auto c = match_child(text)) return c;
  return match_parent(text);
}

std::size_t Codebook::child_index(std::string_view label) const {
  const auto it = child_idx_.find(std::string(label));
  if (it == child_idx_.end()) throw Error(Errc::kUnknownLabel, std::string(label));
  return it->second;
}

std::size_t Codebook::parent_index(std::string_view label) const {
  const auto it = parent_idx_.find(std::string(label));
  if (it == parent_idx_.end()) throw Error(Errc::kUnknownLabel, std::string(label));
  return it->second;
}

Codebook parse_codebook(std::string_view csv_text) {
  const auto records = csv::parse(csv_text);
  if (records.empty()) throw Error(Errc::kMissingColumn, "Parent (empty file)");
  const auto& header = records.front().fields;
  for (std::size_t k = 0; k < 4; ++k) {
    if (k >= header.size() || header[k] != kCodebookHeader[k]) {
      throw Error(Errc::kMissingColumn, std::string(kCodebookHeader[k]));
    }
  }
  if (header.size() != 4) {
    throw Error(Errc::kParseError, "codebook must have exactly 4 columns, got " +
                                       std::to_string(header.size()));
  }

  std::vector<std::string> parents;
  std::vector<ChildCode> children;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    if (f.size() != 4) {
      throw Error(Errc::kParseError, "line " + std::to_string(records[r].line) +
                                         ": expected 4 fields");
    }
    std::string parent(trim(f[0]));
    std::string child(trim(f[1]));
    if (parent.empty()) {
      throw Error(Errc::kOrphanChild, child.empty() ? "line " + std::to_string(records[r].line)
                                                    : child);
    }
    if (std::find(parents.begin(), parents.end(), parent) == parents.end()) {
      parents.push_back(parent);
    }
    if (child.empty()) continue;
    ChildCode code{child, parent, std::string(trim(f[2])), {}};
    for (const auto& kw : split(f[3], ';')) {
      const auto t = trim(kw);
      if (!t.empty()) code.keywords.emplace_back(t);
    }
    children.push_back(std::move(code));
  }
  return Codebook(std::move(parents), std::move(children));
}

Codebook load_codebook(const std::filesystem::path& path) {
  return parse_codebook(read_file(path));
}

std::string codebook_to_prompt_csv(const Codebook& cb) {
  std::string out = csv::format_row(
      {std::string(kCodebookHeader[0]), std::string(kCodebookHeader[1]),
       std::string(kCodebookHeader[2]), std::string(kCodebookHeader[3])});
  // Parent order is first-appearance order on re-read, so a parent that has
  // not shown up before a later parent's child gets a childless row first.
  std::vector<bool> emitted(cb.parents().size(), false);
  const auto declare_parents_upto = [&](std::size_t end) {
    for (std::size_t p = 0; p < end; ++p) {
      if (emitted[p]) continue;
      out += csv::format_row({cb.parents()[p], "", "", ""});
      emitted[p] = true;
    }
  };
  for (const auto& c : cb.children()) {
    const auto pi = cb.parent_index(c.parent_label);
    declare_parents_upto(pi);
    emitted[pi] = true;
    out += csv::format_row({c.parent_label, c.label, c.description, join(c.keywords, ";")});
  }
  declare_parents_upto(cb.parents().size());
  return out;
}

std::string parent_of(const Codebook& cb, const CodeRef& ref) {
  if (ref.is_child()) {
    const auto* c = cb.find_child(ref.label);
    if (!c) throw Error(Errc::kUnknownLabel, to_string(ref));
    return c->parent_label;
  }
  if (!cb.has_parent(ref.label)) throw Error(Errc::kUnknownLabel, to_string(ref));
  return ref.label;
}

std::vector<CodeRef> code_universe(const Codebook& cb, LabelLevel level,
                                   bool include_parent_only) {
  std::vector<CodeRef> out;
  if (level == LabelLevel::kOriginal) {
    for (const auto& c : cb.children()) out.push_back(CodeRef::child(c.label));
    if (!include_parent_only) return out;
  }
  for (const auto& p : cb.parents()) out.push_back(CodeRef::parent(p));
  return out;
}

}  // namespace voicelens
