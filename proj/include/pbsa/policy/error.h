// Copyright 2026 The PbSA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pbsa {

// Raised for malformed policy text. `position` is a byte offset into the
// offending input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::string input, size_t position)
      : std::runtime_error(Format(message, input, position)),
        input_(std::move(input)),
        position_(position) {}

  const std::string& input() const { return input_; }
  size_t position() const { return position_; }

 private:
  static std::string Format(const std::string& message,
                            const std::string& input, size_t position) {
    return message + " in \"" + input + "\" at position " +
           std::to_string(position);
  }

  std::string input_;
  size_t position_;
};

// Raised for well-formed documents that violate a semantic rule (duplicate
// id, missing required field, unknown field in strict mode).
class PolicyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pbsa
