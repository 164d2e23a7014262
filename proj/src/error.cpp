// Copyright 2026 The VoiceLens Authors
// SPDX-License-Identifier: Apache-2.0

#include "voicelens/error.hpp"

namespace voicelens {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kIo: return "IoError";
    case Errc::kParseError: return "ParseError";
    case Errc::kMissingColumn: return "MissingColumn";
    case Errc::kDuplicateId: return "DuplicateId";
    case Errc::kEmptyText: return "EmptyText";
    case Errc::kDuplicateChildLabel: return "DuplicateChildLabel";
    case Errc::kOrphanChild: return "OrphanChild";
    case Errc::kUnknownLabel: return "UnknownLabel";
    case Errc::kNoJsonFound: return "NoJsonFound";
    case Errc::kAllLabelsUnmatched: return "AllLabelsUnmatched";
    case Errc::kUnknownSentiment: return "UnknownSentiment";
    case Errc::kProviderUnavailable: return "ProviderUnavailable";
    case Errc::kProviderError: return "ProviderError";
    case Errc::kEmptyVocabulary: return "EmptyVocabulary";
    case Errc::kInvalidHyperparameter: return "InvalidHyperparameter";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kLabelOutsideUniverse: return "LabelOutsideUniverse";
    case Errc::kNoEligibleParagraphs: return "NoEligibleParagraphs";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kSingleClassTruth: return "SingleClassTruth";
    case Errc::kMissingAnnotation: return "MissingAnnotation";
    case Errc::kBindFailure: return "BindFailure";
    case Errc::kCorruptState: return "CorruptState";
    case Errc::kStageFailed: return "StageFailed";
  }
  return "Unknown";
}

}  // namespace voicelens
