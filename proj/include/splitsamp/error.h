// Copyright 2026 The splitsamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPLITSAMP_ERROR_H_
#define SPLITSAMP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace splitsamp {

enum class ErrorCode {
  kInvalidSize,
  kInvalidInput,
  kParse,
  kValidation,
  kContractViolation,
  kRunaway,
  kInternalConsistency,
  kRepresentation,
  kEnumerationTooLarge,
  kNotApplicable,
  kDimensionMismatch,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; the code lets callers
// (the CLI in particular) map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

  // Errors caused by bad user input rather than a broken invariant.
  bool is_input_error() const noexcept {
    switch (code_) {
      case ErrorCode::kInvalidSize:
      case ErrorCode::kInvalidInput:
      case ErrorCode::kParse:
      case ErrorCode::kValidation:
      case ErrorCode::kNotApplicable:
      case ErrorCode::kDimensionMismatch:
      case ErrorCode::kEnumerationTooLarge:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSize: return "invalid size";
    case ErrorCode::kInvalidInput: return "invalid input";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kValidation: return "validation error";
    case ErrorCode::kContractViolation: return "contract violation";
    case ErrorCode::kRunaway: return "runaway";
    case ErrorCode::kInternalConsistency: return "internal consistency";
    case ErrorCode::kRepresentation: return "representation error";
    case ErrorCode::kEnumerationTooLarge: return "enumeration too large";
    case ErrorCode::kNotApplicable: return "not applicable";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
  }
  return "error";
}

}  // namespace splitsamp

#endif  // SPLITSAMP_ERROR_H_
