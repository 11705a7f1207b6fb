// Copyright 2026 The qswitch Authors
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
#include <utility>

namespace qswitch {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (matrix-vector sizes, qubit counts, ...).
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A value violates a documented precondition. When the value came from a
/// JSON document, `pointer()` names the offending field (RFC 6901).
class ValidationError : public Error {
  public:
    explicit ValidationError(const std::string &what, std::string pointer = {})
        : Error(pointer.empty() ? what : pointer + ": " + what),
          pointer_(std::move(pointer)) {}

    [[nodiscard]] const std::string &pointer() const noexcept { return pointer_; }

  private:
    std::string pointer_;
};

/// Reading or writing a file failed.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace qswitch
