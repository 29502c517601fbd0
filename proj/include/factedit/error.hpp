// Copyright 2026 The FactEdit Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace factedit {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidInput,  // malformed input record; carries a line number
  kMissingAnnotation,
  kInvalidSpans,
  kMalformedMarkup,
  kParseAlignment,
  kMissingResponse,
  kDuplicateResponse,
  kUnknownResponse,
  kAlignmentError,
  kEmptyCorpus,
  kTimeout,
  kIo,
};

inline std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kMissingAnnotation: return "MissingAnnotation";
    case ErrorCode::kInvalidSpans: return "InvalidSpans";
    case ErrorCode::kMalformedMarkup: return "MalformedMarkup";
    case ErrorCode::kParseAlignment: return "ParseAlignment";
    case ErrorCode::kMissingResponse: return "MissingResponse";
    case ErrorCode::kDuplicateResponse: return "DuplicateResponse";
    case ErrorCode::kUnknownResponse: return "UnknownResponse";
    case ErrorCode::kAlignmentError: return "AlignmentError";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

// All library failures are reported through this exception. Validation
// failures (bad input data) are distinguished from internal errors by code so
// the command line front end can map them to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code),
        message_(message) {}

  Error(ErrorCode code, const std::string& message, std::vector<std::string> ids)
      : Error(code, message) {
    ids_ = std::move(ids);
  }

  ErrorCode code() const { return code_; }

  // Message without the code prefix.
  const std::string& message() const { return message_; }

  // Record ids involved in the failure (MissingResponse and friends).
  const std::vector<std::string>& ids() const { return ids_; }

  // 1-based input line, 0 when not tied to a line.
  std::size_t line() const { return line_; }
  Error& at_line(std::size_t line) {
    line_ = line;
    return *this;
  }

  bool is_validation() const {
    return code_ != ErrorCode::kIo && code_ != ErrorCode::kTimeout;
  }

 private:
  ErrorCode code_;
  std::string message_;
  std::vector<std::string> ids_;
  std::size_t line_ = 0;
};

}  // namespace factedit
