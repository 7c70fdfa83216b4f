/*
 * Copyright 2026 The f1ev Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef F1EV_ERROR_H_
#define F1EV_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace f1ev {

enum class ErrorCode {
  kInvalidInput,
  kInvalidParameter,
  kEmptySet,
  kSingleClass,
  kDegenerateScores,
  kInsufficientNormals,
  kInsufficientData,
  kUndefinedCorrelation,
  kParseError,
  kJoinError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  // `line` is 1-based and counts the header row; 0 means the whole file.
  ParseError(std::string path, std::size_t line, const std::string& what);

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

class JoinError : public Error {
 public:
  explicit JoinError(std::vector<std::string> missing_ids);

  const std::vector<std::string>& missing_ids() const { return missing_ids_; }

 private:
  std::vector<std::string> missing_ids_;
};

}  // namespace f1ev

#endif  // F1EV_ERROR_H_
