// Copyright 2026 The snaplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snaplab/common/error.hpp"

namespace snaplab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kPageOutOfRange: return "PageOutOfRange";
    case ErrorCode::kAppFsNotMounted: return "AppFsNotMounted";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kBaseMismatch: return "BaseMismatch";
    case ErrorCode::kMissingArtifact: return "MissingArtifact";
    case ErrorCode::kForeignWorkingSet: return "ForeignWorkingSet";
    case ErrorCode::kPlanSpecMismatch: return "PlanSpecMismatch";
    case ErrorCode::kNotRequestReady: return "NotRequestReady";
    case ErrorCode::kNegativeD: return "NegativeD";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kNoCapacity: return "NoCapacity";
    case ErrorCode::kDeterminismViolation: return "DeterminismViolation";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingArtifact:
      return 3;
    case ErrorCode::kIo:
    case ErrorCode::kCorruptFile:
    case ErrorCode::kVersionMismatch:
      return 4;
    default:
      return 2;
  }
}

}  // namespace snaplab
