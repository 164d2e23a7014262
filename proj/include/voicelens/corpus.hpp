// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Tidy-text interview corpus: one paragraph ("one complete thought") per row,
// with interviewee role metadata.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "voicelens/text.hpp"

namespace voicelens {

enum class RoleGroup { kAdministratorPolicymaker, kEducator, kNonProfitAdvocate, kOther };

std::string_view to_string(RoleGroup role);
// Accepts the canonical names and common spellings ("Administrators/Policymakers",
// "Non-Profit and Advocates", ...). Returns nullopt for anything else.
std::optional<RoleGroup> parse_role(std::string_view text);

struct Paragraph {
  std::string id;
  std::string text;
  std::string interviewee_id;
  RoleGroup role_group = RoleGroup::kOther;
  std::optional<std::string> location;
  std::map<std::string, std::string> extra;

  bool operator==(const Paragraph&) const = default;
};

enum class CorpusFormat { kCsv, kJsonl };

std::string_view to_string(CorpusFormat format);
std::optional<CorpusFormat> parse_corpus_format(std::string_view name);
// By extension: .jsonl/.ndjson -> jsonl, anything else csv.
CorpusFormat corpus_format_for(const std::filesystem::path& path);

class Corpus {
 public:
  Corpus() = default;
  // Validates the id-uniqueness and non-empty-text invariants.
  Corpus(std::vector<Paragraph> paragraphs, std::string source_path);

  const std::vector<Paragraph>& paragraphs() const { return paragraphs_; }
  const std::string& source_path() const { return source_path_; }
  std::size_t size() const { return paragraphs_.size(); }
  bool empty() const { return paragraphs_.empty(); }

  // Index of the paragraph with this id, or nullopt.
  std::optional<std::size_t> index_of(std::string_view id) const;
  const Paragraph& at(std::string_view id) const;

  bool operator==(const Corpus& other) const { return paragraphs_ == other.paragraphs_; }

 private:
  std::vector<Paragraph> paragraphs_;
  std::string source_path_;
  std::unordered_map<std::string, std::size_t> index_;
};

Corpus parse_corpus_csv(std::string_view text, std::string source_path = {},
                        const WarningSink& warn = stderr_warning);
Corpus parse_corpus_jsonl(std::string_view text, std::string source_path = {},
                          const WarningSink& warn = stderr_warning);
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   const WarningSink& warn = stderr_warning);

std::string to_csv(const Corpus& corpus);
std::string to_jsonl(const Corpus& corpus);

// Partition of paragraph ids by role; each list keeps document order.
std::map<RoleGroup, std::vector<std::string>> group_by_role(const Corpus& corpus);

}  // namespace voicelens
