// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

// Small string and file helpers shared by every module.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace voicelens {

using WarningSink = std::function<void(const std::string&)>;

// Writes "warning: <msg>" to stderr.
void stderr_warning(const std::string& message);

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

// trim + ASCII casefold + collapse internal whitespace runs to one space.
std::string normalize_label(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Word tokens. A word is a maximal run of ASCII letters/digits or non-ASCII
// bytes; an apostrophe (' or U+2019) between two word characters stays inside
// the word (normalized to '), so "isn't" is one token.
std::vector<std::string> tokenize_words(std::string_view text, bool lowercase = true);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file, then renames over the target.
void write_file(const std::filesystem::path& path, std::string_view contents);

// Lowercase hex SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace voicelens
