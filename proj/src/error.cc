// Copyright 2026 The NaLQA Authors.
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


#include "nalqa/error.h"

namespace nalqa {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kCycle: return "cycle";
    case ErrorKind::kUnknownClass: return "unknown-class";
    case ErrorKind::kUnknownInstance: return "unknown-instance";
    case ErrorKind::kUnknownAttribute: return "unknown-attribute";
    case ErrorKind::kKindViolation: return "kind-violation";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kMalformedLine: return "malformed-line";
    case ErrorKind::kMultipleRoots: return "multiple-roots";
    case ErrorKind::kOutOfSubset: return "out-of-subset";
    case ErrorKind::kUnresolvedAnaphor: return "unresolved-anaphor";
    case ErrorKind::kNoMarker: return "no-marker";
    case ErrorKind::kMissingJudgment: return "missing-judgment";
    case ErrorKind::kEmptySeries: return "empty-series";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace nalqa
