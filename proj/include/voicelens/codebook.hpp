// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Two-level codebook: parent codes (broad themes) and child codes (specific
// themes). A label is either a child code or a parent-only code.

#pragma once

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace voicelens {

enum class CodeLevel { kChild, kParent };

std::string_view to_string(CodeLevel level);
std::optional<CodeLevel> parse_code_level(std::string_view text);

// ChildRef(label) | ParentRef(label).
struct CodeRef {
  CodeLevel level = CodeLevel::kChild;
  std::string label;

  static CodeRef child(std::string label) { return {CodeLevel::kChild, std::move(label)}; }
  static CodeRef parent(std::string label) { return {CodeLevel::kParent, std::move(label)}; }

  bool is_child() const { return level == CodeLevel::kChild; }
  auto operator<=>(const CodeRef&) const = default;
};

std::string to_string(const CodeRef& ref);

struct ChildCode {
  std::string label;
  std::string parent_label;
  std::string description;
  std::vector<std::string> keywords;

  bool operator==(const ChildCode&) const = default;
};

inline constexpr std::string_view kCodebookHeader[] = {"Parent", "Child", "Child_description",
                                                       "Key words"};

class Codebook {
 public:
  Codebook() = default;
  // Throws kOrphanChild if a child's parent is not listed, kDuplicateChildLabel
  // on a repeated child label.
  Codebook(std::vector<std::string> parents, std::vector<ChildCode> children);

  const std::vector<std::string>& parents() const { return parents_; }
  const std::vector<ChildCode>& children() const { return children_; }

  bool has_parent(std::string_view label) const;
  bool has_child(std::string_view label) const;
  const ChildCode* find_child(std::string_view label) const;
  bool contains(const CodeRef& ref) const;

  // Matches after normalize_label (trim, casefold, whitespace collapse).
  std::optional<CodeRef> match_child(std::string_view text) const;
  std::optional<CodeRef> match_parent(std::string_view text) const;
  // Child labels first, then parent labels.
  std::optional<CodeRef> match_any(std::string_view text) const;

  std::size_t child_index(std::string_view label) const;
  std::size_t parent_index(std::string_view label) const;

  bool operator==(const Codebook& other) const {
    return parents_ == other.parents_ && children_ == other.children_;
  }

 private:
  std::vector<std::string> parents_;
  std::vector<ChildCode> children_;
  std::unordered_map<std::string, std::size_t> parent_idx_, child_idx_;
  std::unordered_map<std::string, std::size_t> parent_norm_, child_norm_;
};

// Header must be exactly Parent,Child,Child_description,Key words. Keywords are
// a ';'-separated list in one cell. A row with an empty Child declares a
// parent without adding a child.
Codebook parse_codebook(std::string_view csv_text);
Codebook load_codebook(const std::filesystem::path& path);

// Stable CSV (RFC 4180 quoting) that parse_codebook reads back unchanged.
std::string codebook_to_prompt_csv(const Codebook& cb);

// ChildRef -> its parent, ParentRef -> itself. Throws kUnknownLabel.
std::string parent_of(const Codebook& cb, const CodeRef& ref);

// Granularity of a labeled corpus: unmodified labels, or everything mapped
// to parent codes.
enum class LabelLevel { kOriginal, kParent };

std::string_view to_string(LabelLevel level);
std::optional<LabelLevel> parse_label_level(std::string_view text);

// Original level: every child code then (unless excluded) every parent code as
// a parent-only label, codebook order. Parent level: parents only.
std::vector<CodeRef> code_universe(const Codebook& cb, LabelLevel level,
                                   bool include_parent_only = true);

}  // namespace voicelens
