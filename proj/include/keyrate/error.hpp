// Copyright 2026 The keyrate Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace keyrate {

// A parameter lies outside the domain of the quantity being computed.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A protocol or objective evaluation produced something unusable (NaN,
// infinity) or failed inside a sweep cell.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range configuration. `line` is 1-based, 0 when the
// problem is not tied to a specific line; `key` is empty when no key applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& message)
      : std::runtime_error(Format(line, key, message)),
        line_(line),
        key_(std::move(key)) {}

  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string Format(std::size_t line, const std::string& key,
                            const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += key + ": ";
    return out + message;
  }

  std::size_t line_;
  std::string key_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& message, std::size_t bytes_written)
      : std::runtime_error(message + " (" + std::to_string(bytes_written) +
                           " bytes written)"),
        bytes_written_(bytes_written) {}

  std::size_t bytes_written() const { return bytes_written_; }

 private:
  std::size_t bytes_written_;
};

}  // namespace keyrate
