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

// A small TOML reader for experiment configs.
//
// Supported: comments, bare and quoted keys, dotted keys, [table] and
// [a.b] headers, basic and literal strings, integers (with _ separators),
// floats, booleans, arrays (may span lines) and inline tables.
// Not supported: dates and times, multi-line strings, arrays of tables.

#ifndef CONTROVERSY_TOML_LITE_H_
#define CONTROVERSY_TOML_LITE_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace controversy {

// Throws ConfigError naming `source` and the line on malformed input.
nlohmann::json parse_toml(std::string_view text,
                          const std::string &source = "<string>");

// Throws ConfigError naming the path when the file cannot be read.
nlohmann::json load_toml(const std::string &path);

}  // namespace controversy

#endif  // CONTROVERSY_TOML_LITE_H_
