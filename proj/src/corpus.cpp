// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/corpus.hpp"

#include <algorithm>

#include <json.hpp>

#include "voicelens/csv.hpp"
#include "voicelens/error.hpp"

namespace voicelens {

namespace {

constexpr std::string_view kRequired[] = {"id", "text", "interviewee_id", "role_group"};

std::string letters_only(std::string_view s) {
  std::string out;
  for (char c : s) {
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      out.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
    }
  }
  return out;
}

RoleGroup role_or_other(std::string_view raw, const std::string& id, const WarningSink& warn) {
  if (auto r = parse_role(raw)) return *r;
  warn("paragraph " + id + ": unknown role_group '" + std::string(raw) + "' mapped to Other");
  return RoleGroup::kOther;
}

}  // namespace

std::string_view to_string(RoleGroup role) {
  switch (role) {
    case RoleGroup::kAdministratorPolicymaker: return "AdministratorPolicymaker";
    case RoleGroup::kEducator: return "Educator";
    case RoleGroup::kNonProfitAdvocate: return "NonProfitAdvocate";
    case RoleGroup::kOther: return "Other";
  }
  return "Other";
}

std::optional<RoleGroup> parse_role(std::string_view text) {
  static const std::pair<std::string_view, RoleGroup> kAliases[] = {
      {"administratorpolicymaker", RoleGroup::kAdministratorPolicymaker},
      {"administratorspolicymakers", RoleGroup::kAdministratorPolicymaker},
      {"administratorsandpolicymakers", RoleGroup::kAdministratorPolicymaker},
      {"administratorandpolicymaker", RoleGroup::kAdministratorPolicymaker},
      {"administrator", RoleGroup::kAdministratorPolicymaker},
      {"policymaker", RoleGroup::kAdministratorPolicymaker},
      {"educator", RoleGroup::kEducator},
      {"educators", RoleGroup::kEducator},
      {"nonprofitadvocate", RoleGroup::kNonProfitAdvocate},
      {"nonprofitadvocates", RoleGroup::kNonProfitAdvocate},
      {"nonprofitandadvocates", RoleGroup::kNonProfitAdvocate},
      {"nonprofitandadvocate", RoleGroup::kNonProfitAdvocate},
      {"other", RoleGroup::kOther},
  };
  const std::string key = letters_only(text);
  for (const auto& [alias, role] : kAliases) {
    if (key == alias) return role;
  }
  return std::nullopt;
}

std::string_view to_string(CorpusFormat format) {
  return format == CorpusFormat::kCsv ? "csv" : "jsonl";
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  const auto n = to_lower_ascii(trim(name));
  if (n == "csv") return CorpusFormat::kCsv;
  if (n == "jsonl") return CorpusFormat::kJsonl;
  return std::nullopt;
}

CorpusFormat corpus_format_for(const std::filesystem::path& path) {
  const auto ext = to_lower_ascii(path.extension().string());
  return (ext == ".jsonl" || ext == ".ndjson") ? CorpusFormat::kJsonl : CorpusFormat::kCsv;
}

Corpus::Corpus(std::vector<Paragraph> paragraphs, std::string source_path)
    : paragraphs_(std::move(paragraphs)), source_path_(std::move(source_path)) {
  index_.reserve(paragraphs_.size());
  for (std::size_t i = 0; i < paragraphs_.size(); ++i) {
    const auto& p = paragraphs_[i];
    if (trim(p.text).empty()) throw Error(Errc::kEmptyText, p.id);
    if (!index_.emplace(p.id, i).second) throw Error(Errc::kDuplicateId, p.id);
  }
}

std::optional<std::size_t> Corpus::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Paragraph& Corpus::at(std::string_view id) const {
  const auto idx = index_of(id);
  if (!idx) throw Error(Errc::kUnknownLabel, "no paragraph with id " + std::string(id));
  return paragraphs_[*idx];
}

Corpus parse_corpus_csv(std::string_view text, std::string source_path, const WarningSink& warn) {
  const auto records = csv::parse(text);
  if (records.empty()) throw Error(Errc::kMissingColumn, "id (no header row)");
  const auto& header = records.front().fields;
  int cols[4];
  for (int k = 0; k < 4; ++k) {
    cols[k] = csv::column_index(header, kRequired[k]);
    if (cols[k] < 0) throw Error(Errc::kMissingColumn, std::string(kRequired[k]));
  }
  const int loc_col = csv::column_index(header, "location");

  std::vector<Paragraph> paragraphs;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.size()) {
      throw Error(Errc::kParseError, "line " + std::to_string(rec.line) + ": expected " +
                                         std::to_string(header.size()) + " fields, got " +
                                         std::to_string(rec.fields.size()));
    }
    Paragraph p;
    p.id = std::string(trim(rec.fields[cols[0]]));
    p.text = rec.fields[cols[1]];
    p.interviewee_id = std::string(trim(rec.fields[cols[2]]));
    p.role_group = role_or_other(rec.fields[cols[3]], p.id, warn);
    if (loc_col >= 0 && !rec.fields[loc_col].empty()) p.location = rec.fields[loc_col];
    for (std::size_t c = 0; c < header.size(); ++c) {
      const int ci = static_cast<int>(c);
      if (ci == cols[0] || ci == cols[1] || ci == cols[2] || ci == cols[3] || ci == loc_col) {
        continue;
      }
      if (!rec.fields[c].empty()) p.extra[header[c]] = rec.fields[c];
    }
    paragraphs.push_back(std::move(p));
  }
  if (paragraphs.empty()) warn("corpus " + source_path + " has no data rows");
  return Corpus(std::move(paragraphs), std::move(source_path));
}

Corpus parse_corpus_jsonl(std::string_view text, std::string source_path, const WarningSink& warn) {
  std::vector<Paragraph> paragraphs;
  const auto lines = split(text, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto line = trim(lines[ln]);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(ln + 1);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::kParseError, where + ": " + e.what());
    }
    if (!obj.is_object()) throw Error(Errc::kParseError, where + ": not a JSON object");
    for (auto key : kRequired) {
      if (!obj.contains(key) || !obj[key].is_string()) {
        throw Error(Errc::kMissingColumn, std::string(key) + " (" + where + ")");
      }
    }
    Paragraph p;
    p.id = std::string(trim(obj["id"].get<std::string>()));
    p.text = obj["text"].get<std::string>();
    p.interviewee_id = std::string(trim(obj["interviewee_id"].get<std::string>()));
    p.role_group = role_or_other(obj["role_group"].get<std::string>(), p.id, warn);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const auto& key = it.key();
      if (key == "id" || key == "text" || key == "interviewee_id" || key == "role_group") continue;
      if (it->is_null()) continue;
      const std::string value = it->is_string() ? it->get<std::string>() : it->dump();
      if (key == "location") {
        if (!value.empty()) p.location = value;
      } else if (!value.empty()) {
        p.extra[key] = value;
      }
    }
    paragraphs.push_back(std::move(p));
  }
  if (paragraphs.empty()) warn("corpus " + source_path + " has no data rows");
  return Corpus(std::move(paragraphs), std::move(source_path));
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, const WarningSink& warn) {
  const auto text = read_file(path);
  return format == CorpusFormat::kCsv ? parse_corpus_csv(text, path.string(), warn)
                                      : parse_corpus_jsonl(text, path.string(), warn);
}

std::string to_csv(const Corpus& corpus) {
  std::vector<std::string> extra_keys;
  for (const auto& p : corpus.paragraphs()) {
    for (const auto& [k, v] : p.extra) {
      if (std::find(extra_keys.begin(), extra_keys.end(), k) == extra_keys.end()) {
        extra_keys.push_back(k);
      }
    }
  }
  std::sort(extra_keys.begin(), extra_keys.end());
  std::vector<std::string> header = {"id", "text", "interviewee_id", "role_group", "location"};
  header.insert(header.end(), extra_keys.begin(), extra_keys.end());
  std::string out = csv::format_row(header);
  for (const auto& p : corpus.paragraphs()) {
    std::vector<std::string> row = {p.id, p.text, p.interviewee_id,
                                     std::string(to_string(p.role_group)),
                                     p.location.value_or("")};
    for (const auto& k : extra_keys) {
      const auto it = p.extra.find(k);
      row.push_back(it == p.extra.end() ? std::string() : it->second);
    }
    out += csv::format_row(row);
  }
  return out;
}

std::string to_jsonl(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.paragraphs()) {
    nlohmann::ordered_json obj;
    obj["id"] = p.id;
    obj["text"] = p.text;
    obj["interviewee_id"] = p.interviewee_id;
    obj["role_group"] = to_string(p.role_group);
    if (p.location) obj["location"] = *p.location;
    for (const auto& [k, v] : p.extra) obj[k] = v;
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

std::map<RoleGroup, std::vector<std::string>> group_by_role(const Corpus& corpus) {
  std::map<RoleGroup, std::vector<std::string>> groups;
  for (const auto& p : corpus.paragraphs()) groups[p.role_group].push_back(p.id);
  return groups;
}

}  // namespace voicelens
