// Copyright 2026 The sreval Authors. All Rights Reserved.
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

#ifndef SREVAL_ERRORS_H_
#define SREVAL_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sreval {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs that are well-formed on disk but violate a contract: shape
// mismatches, out-of-range parameters, duplicate keys, missing scores.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Files that cannot be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// An image stream that opened but failed to decode.
class CorruptImageError : public IoError {
 public:
  using IoError::IoError;
};

// A text record (CSV / JSON-lines) that failed to parse. Carries the 1-based
// line number of the offending record.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sreval

#endif  // SREVAL_ERRORS_H_
