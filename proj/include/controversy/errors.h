// Copyright 2026 The Controversy Toolkit Authors.
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

#ifndef CONTROVERSY_ERRORS_H_
#define CONTROVERSY_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace controversy {

// Problems with input data: unreadable files, schema violations, degenerate
// datasets. The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A record that violates the JSON Lines schema. `line` is 1-based.
class SchemaError : public DataError {
 public:
  SchemaError(const std::string &path, std::size_t line,
              const std::string &what)
      : DataError(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string &path() const { return path_; }
  std::size_t line() const { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

// Invalid experiment configuration (bad TOML, out-of-range values).
class ConfigError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace controversy

#endif  // CONTROVERSY_ERRORS_H_
