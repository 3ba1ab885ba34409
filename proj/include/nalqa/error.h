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

#ifndef NALQA_ERROR_H_
#define NALQA_ERROR_H_

#include <stdexcept>
#include <string>

namespace nalqa {

enum class ErrorKind {
  kParse,
  kCycle,
  kUnknownClass,
  kUnknownInstance,
  kUnknownAttribute,
  kKindViolation,
  kSchema,
  kMalformedLine,
  kMultipleRoots,
  kOutOfSubset,
  kUnresolvedAnaphor,
  kNoMarker,
  kMissingJudgment,
  kEmptySeries,
  kIo,
  kInvalidArgument,
};

const char *ErrorKindName(ErrorKind kind);

// All recoverable failures in the library are reported with this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nalqa

#endif  // NALQA_ERROR_H_
