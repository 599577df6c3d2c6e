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

#include "controversy/text.h"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>

#include "controversy/errors.h"

namespace controversy {

namespace {

bool is_separator(char32_t cp) {
  if (cp < 0x80) {
    if (cp <= 0x20 || cp == 0x7F) return true;
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x80 && cp <= 0xBF) ||    // C1 controls, NBSP, Latin-1 punct
         cp == 0xD7 || cp == 0xF7 ||      // multiplication, division signs
         cp == 0x1680 ||                  // ogham space
         (cp >= 0x2000 && cp <= 0x206F) ||  // general punctuation and spaces
         (cp >= 0x3000 && cp <= 0x303F) ||  // CJK symbols and punctuation
         (cp >= 0xFE30 && cp <= 0xFE4F) ||  // CJK compatibility forms
         (cp >= 0xFF01 && cp <= 0xFF0F) ||  // full-width punctuation
         (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
         (cp >= 0xFF5B && cp <= 0xFF65);
}

char32_t fold(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

void append_utf8(std::string &out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Decodes one code point at `pos` and advances it. Invalid or truncated
// sequences come back as 0x80, which is a separator.
char32_t next_code_point(std::string_view s, std::size_t &pos) {
  const auto lead = static_cast<unsigned char>(s[pos]);
  int extra;
  char32_t cp;
  if (lead < 0x80) {
    ++pos;
    return lead;
  } else if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return 0x80;
  }
  if (pos + extra >= s.size()) {
    pos = s.size();
    return 0x80;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto b = static_cast<unsigned char>(s[pos + i]);
    if ((b & 0xC0) != 0x80) {
      pos += i;
      return 0x80;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

}  // namespace

Lexicon::Lexicon(std::string name,
                 std::unordered_map<std::string, double> entries,
                 bool case_folding)
    : name_(std::move(name)), case_folding_(case_folding) {
  for (auto &[token, score] : entries) {
    if (token.empty()) throw std::invalid_argument("empty lexicon token");
    if (!(score >= -1.0 && score <= 1.0)) {
      throw std::invalid_argument("lexicon score out of [-1, 1] for " + token);
    }
    std::string key = token;
    if (case_folding_) {
      auto folded = tokenize(token, true);
      if (folded.size() == 1) key = folded.front();
    }
    entries_[key] = score;
  }
}

Lexicon Lexicon::Load(const std::string &path, bool case_folding) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read lexicon " + path);
  std::unordered_map<std::string, double> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw SchemaError(path, line_no, "expected token<TAB>score");
    }
    std::string token = line.substr(0, tab);
    double score;
    try {
      std::size_t used = 0;
      score = std::stod(line.substr(tab + 1), &used);
      if (tab + 1 + used != line.size()) throw std::invalid_argument("tail");
    } catch (const std::exception &) {
      throw SchemaError(path, line_no, "score is not a number");
    }
    if (!(score >= -1.0 && score <= 1.0)) {
      throw SchemaError(path, line_no, "score outside [-1, 1]");
    }
    if (!entries.emplace(token, score).second) {
      throw SchemaError(path, line_no, "duplicate token " + token);
    }
  }
  return Lexicon(path, std::move(entries), case_folding);
}

Lexicon Lexicon::BuiltinDemo() {
  return Lexicon("builtin-demo",
                 {
                     {"good", 0.5},       {"great", 0.8},    {"love", 0.8},
                     {"excellent", 0.9},  {"nice", 0.4},     {"happy", 0.6},
                     {"agree", 0.3},      {"thanks", 0.4},   {"beautiful", 0.7},
                     {"fun", 0.5},        {"bad", -0.5},     {"terrible", -0.8},
                     {"hate", -0.8},      {"awful", -0.8},   {"wrong", -0.4},
                     {"stupid", -0.7},    {"disagree", -0.3}, {"liar", -0.7},
                     {"angry", -0.6},     {"sad", -0.5},     {"nonsense", -0.6},
                     {"ridiculous", -0.6},
                 },
                 true);
}

const double *Lexicon::find(std::string_view token) const {
  auto it = entries_.find(std::string(token));
  return it == entries_.end() ? nullptr : &it->second;
}

Lexicon Lexicon::negated() const {
  Lexicon out = *this;
  for (auto &[token, score] : out.entries_) score = -score;
  return out;
}

std::vector<std::string> tokenize(std::string_view text, bool case_folding) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    char32_t cp = next_code_point(text, pos);
    if (is_separator(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      continue;
    }
    append_utf8(current, case_folding ? fold(cp) : cp);
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

double score_text(std::string_view text, const Lexicon &lexicon) {
  double sum = 0.0;
  int matched = 0;
  for (const std::string &token : tokenize(text, lexicon.case_folding())) {
    if (const double *v = lexicon.find(token)) {
      sum += *v;
      ++matched;
    }
  }
  return matched == 0 ? 0.0 : sum / matched;
}

TextFeatures text_features(const CommentTree &tree, std::span<const int> nodes,
                           const Lexicon &lexicon, const TextOptions &options) {
  TextFeatures f;
  f.post_emotion = score_text(tree.post().text, lexicon);
  if (nodes.empty()) return f;
  double sum = 0.0;
  for (int node : nodes) {
    const double c = score_text(tree.comment(node).text, lexicon);
    sum += options.absolute_intensity ? std::fabs(c) : c;
  }
  f.comment_emotion = sum / static_cast<double>(nodes.size());
  return f;
}

TextFeatures text_features(const CommentTree &tree, const Lexicon &lexicon,
                           const TextOptions &options) {
  std::vector<int> nodes(tree.size());
  for (int i = 0; i < tree.size(); ++i) nodes[i] = i + 1;
  return text_features(tree, nodes, lexicon, options);
}

}  // namespace controversy
