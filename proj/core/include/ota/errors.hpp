// Copyright 2026 The ota_fedsim Authors
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

#ifndef OTA_ERRORS_HPP_
#define OTA_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ota {

// Bad experiment configuration: schema violations, out-of-range parameters,
// distribution parameters that cannot produce positive coefficients.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model invariant failed at runtime. Indicates a bug upstream (for example
// a channel model that produced a nonpositive coefficient).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed input file. line() is 1-based; 0 when the error is not tied to
// a particular line (empty file, unreadable path).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ota

#endif  // OTA_ERRORS_HPP_
