// Copyright 2026 The fusevos Authors
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

#ifndef FUSEVOS_ERROR_HPP
#define FUSEVOS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fusevos {

enum class ErrorKind {
  kInvalidInput,
  kFormat,       // malformed file contents (PNG, CGFV)
  kIo,           // open/read/write/rename failures
  kMissingData,  // an expected file or frame is absent
  kManifest,     // manifest could not be parsed or is structurally wrong
};

const char* ToString(ErrorKind kind);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace fusevos

#endif  // FUSEVOS_ERROR_HPP
