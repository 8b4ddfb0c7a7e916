// Copyright 2026 The faceparse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "faceparse/types.hpp"

namespace faceparse {

std::optional<CategoryId> category_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (kCategoryNames[i] == name) return static_cast<CategoryId>(i);
  }
  return std::nullopt;
}

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDuplicateCategory: return "DuplicateCategory";
    case ErrorCode::kMissingCategory: return "MissingCategory";
    case ErrorCode::kBadStrategy: return "BadStrategy";
    case ErrorCode::kMalformedSchema: return "MalformedSchema";
    case ErrorCode::kDegeneratePart: return "DegeneratePart";
    case ErrorCode::kIllConditionedFit: return "IllConditionedFit";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNegativeAlpha: return "NegativeAlpha";
    case ErrorCode::kInvalidProbabilities: return "InvalidProbabilities";
    case ErrorCode::kWrongArity: return "WrongArity";
    case ErrorCode::kInvalidLabel: return "InvalidLabel";
    case ErrorCode::kMissingSplitFile: return "MissingSplitFile";
    case ErrorCode::kDanglingId: return "DanglingId";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace faceparse
