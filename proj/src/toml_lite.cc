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

#include "controversy/toml_lite.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "controversy/errors.h"

namespace controversy {

namespace {

using nlohmann::json;

class Parser {
 public:
  Parser(std::string_view text, std::string source)
      : text_(text), source_(std::move(source)) {}

  json Parse() {
    json root = json::object();
    json *table = &root;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        ++pos_;
        if (peek() == '[') fail("arrays of tables are not supported");
        skip_space();
        const auto path = parse_key_path();
        skip_space();
        expect(']');
        table = &root;
        for (std::size_t i = 0; i < path.size(); ++i) {
          json &next = (*table)[path[i]];
          if (next.is_null()) next = json::object();
          if (!next.is_object()) fail("'" + path[i] + "' is not a table");
          table = &next;
        }
        if (!defined_tables_.insert(join(path)).second) {
          fail("table [" + join(path) + "] defined twice");
        }
      } else {
        parse_assignment(*table);
      }
      end_of_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string &what) const {
    throw ConfigError(source_ + ":" + std::to_string(line_) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (!at_end() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    }
  }

  void skip_blank_lines() {
    while (!at_end()) {
      skip_space();
      skip_comment();
      if (peek() == '\r') ++pos_;
      if (peek() == '\n') {
        ++pos_;
        ++line_;
      } else {
        break;
      }
    }
  }

  // Whitespace, comments and newlines inside arrays.
  void skip_array_space() {
    while (!at_end()) {
      skip_space();
      skip_comment();
      if (peek() == '\r') {
        ++pos_;
      } else if (peek() == '\n') {
        ++pos_;
        ++line_;
      } else {
        break;
      }
    }
  }

  void end_of_line() {
    skip_space();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected text after value");
    ++pos_;
    ++line_;
  }

  static std::string join(const std::vector<std::string> &path) {
    std::string out;
    for (const auto &p : path) out += (out.empty() ? "" : ".") + p;
    return out;
  }

  std::string parse_key() {
    if (peek() == '"') return parse_basic_string();
    if (peek() == '\'') return parse_literal_string();
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '_' || peek() == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> path{parse_key()};
    skip_space();
    while (peek() == '.') {
      ++pos_;
      skip_space();
      path.push_back(parse_key());
      skip_space();
    }
    return path;
  }

  void parse_assignment(json &table) {
    const auto path = parse_key_path();
    skip_space();
    expect('=');
    skip_space();
    json *target = &table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      json &next = (*target)[path[i]];
      if (next.is_null()) next = json::object();
      if (!next.is_object()) fail("'" + path[i] + "' is not a table");
      target = &next;
    }
    if (target->contains(path.back())) {
      fail("key '" + join(path) + "' defined twice");
    }
    (*target)[path.back()] = parse_value();
  }

  json parse_value() {
    const char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  std::string parse_basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = text_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (at_end()) fail("unterminated escape");
      const char e = text_[pos_++];
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'u': {
          if (pos_ + 4 > text_.size()) fail("short \\u escape");
          unsigned cp = 0;
          const auto hex = text_.substr(pos_, 4);
          const auto res = std::from_chars(hex.data(), hex.data() + 4, cp, 16);
          if (res.ptr != hex.data() + 4) fail("bad \\u escape");
          pos_ += 4;
          append_utf8(out, cp);
          break;
        }
        default:
          fail(std::string("unknown escape \\") + e);
      }
    }
    return out;
  }

  static void append_utf8(std::string &out, unsigned cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::string parse_literal_string() {
    expect('\'');
    const std::size_t start = pos_;
    while (!at_end() && peek() != '\'' && peek() != '\n') ++pos_;
    if (peek() != '\'') fail("unterminated string");
    std::string out(text_.substr(start, pos_ - start));
    ++pos_;
    return out;
  }

  json parse_array() {
    expect('[');
    json arr = json::array();
    skip_array_space();
    while (peek() != ']') {
      arr.push_back(parse_value());
      skip_array_space();
      if (peek() == ',') {
        ++pos_;
        skip_array_space();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    ++pos_;
    return arr;
  }

  json parse_inline_table() {
    expect('{');
    json table = json::object();
    skip_space();
    while (peek() != '}') {
      parse_assignment(table);
      skip_space();
      if (peek() == ',') {
        ++pos_;
        skip_space();
      } else if (peek() != '}') {
        fail("expected ',' or '}' in inline table");
      }
    }
    ++pos_;
    return table;
  }

  json parse_number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                         peek() == '+' || peek() == '-' || peek() == '.' ||
                         peek() == '_')) {
      ++pos_;
    }
    std::string token;
    for (char c : text_.substr(start, pos_ - start)) {
      if (c != '_') token += c;
    }
    if (token.empty()) fail("expected a value");
    std::string body = token;
    if (body[0] == '+') body.erase(0, 1);
    const bool is_float =
        body.find_first_of(".eE") != std::string::npos || body == "inf" ||
        body == "-inf" || body == "nan" || body == "-nan";
    if (!is_float) {
      std::int64_t v = 0;
      const auto res =
          std::from_chars(body.data(), body.data() + body.size(), v);
      if (res.ec != std::errc() || res.ptr != body.data() + body.size()) {
        fail("invalid value '" + token + "'");
      }
      return v;
    }
    if (body == "inf") return std::numeric_limits<double>::infinity();
    if (body == "-inf") return -std::numeric_limits<double>::infinity();
    if (body == "nan" || body == "-nan") fail("nan is not allowed");
    double v = 0.0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
    if (res.ec != std::errc() || res.ptr != body.data() + body.size()) {
      fail("invalid value '" + token + "'");
    }
    return v;
  }

  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::set<std::string> defined_tables_;
};

}  // namespace

json parse_toml(std::string_view text, const std::string &source) {
  return Parser(text, source).Parse();
}

json load_toml(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_toml(buf.str(), path);
}

}  // namespace controversy
