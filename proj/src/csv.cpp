// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/csv.hpp"

#include "voicelens/error.hpp"

namespace voicelens::csv {

std::vector<Record> parse(std::string_view text) {
  std::vector<Record> records;
  Record rec;
  std::string field;
  int line = 1;
  rec.line = 1;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool row_has_content = false;

  const auto end_field = [&] {
    rec.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  const auto end_record = [&] {
    end_field();
    const bool blank = !row_has_content && rec.fields.size() == 1 && rec.fields[0].empty();
    if (!blank) records.push_back(std::move(rec));
    rec = Record{};
    row_has_content = false;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          i += 2;
          continue;
        }
        in_quotes = false;
        ++i;
        continue;
      }
      if (c == '\n') ++line;
      field.push_back(c);
      ++i;
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          throw Error(Errc::kParseError, "line " + std::to_string(line) + ": unexpected quote");
        }
        in_quotes = true;
        field_was_quoted = true;
        row_has_content = true;
        break;
      case ',':
        row_has_content = true;
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field.push_back(c);
        break;
      case '\n':
        end_record();
        ++line;
        rec.line = line;
        break;
      default:
        if (field_was_quoted) {
          throw Error(Errc::kParseError,
                      "line " + std::to_string(line) + ": text after closing quote");
        }
        field.push_back(c);
        row_has_content = true;
    }
    ++i;
  }
  if (in_quotes) {
    throw Error(Errc::kParseError, "line " + std::to_string(rec.line) + ": unterminated quote");
  }
  if (row_has_content || !field.empty()) end_record();
  return records;
}

std::string quote_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += quote_field(fields[i]);
  }
  out.push_back('\n');
  return out;
}

int column_index(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace voicelens::csv
