// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace voicelens {

enum class Errc {
  kInvalidArgument,
  kIo,
  kParseError,
  kMissingColumn,
  kDuplicateId,
  kEmptyText,
  kDuplicateChildLabel,
  kOrphanChild,
  kUnknownLabel,
  kNoJsonFound,
  kAllLabelsUnmatched,
  kUnknownSentiment,
  kProviderUnavailable,
  kProviderError,
  kEmptyVocabulary,
  kInvalidHyperparameter,
  kIndexOutOfRange,
  kLabelOutsideUniverse,
  kNoEligibleParagraphs,
  kShapeMismatch,
  kLengthMismatch,
  kSingleClassTruth,
  kMissingAnnotation,
  kBindFailure,
  kCorruptState,
  kStageFailed,
};

std::string_view to_string(Errc code);

// All library failures are reported through this exception; code() carries
// the error kind so callers (CLI, HTTP service) can map it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace voicelens
