// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// RFC 4180 reader/writer. Records end in "\n" on output; "\r\n" is accepted
// on input.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace voicelens::csv {

struct Record {
  std::vector<std::string> fields;
  int line = 0;  // 1-based line on which the record starts
};

// Throws Error(kParseError) on an unterminated quoted field or stray quote.
// Blank lines are skipped.
std::vector<Record> parse(std::string_view text);

std::string quote_field(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

// Column index by exact header name, or -1.
int column_index(const std::vector<std::string>& header, std::string_view name);

}  // namespace voicelens::csv
