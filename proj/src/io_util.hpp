// Copyright 2026 The AdvDialog Authors.
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
//
// Internal helpers for the line-oriented `advdialog-* v1` file formats.
// Not part of the public API.

#ifndef ADVDIALOG_SRC_IO_UTIL_HPP_
#define ADVDIALOG_SRC_IO_UTIL_HPP_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "advdialog/types.hpp"

namespace advdialog {
namespace io {

inline std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

[[noreturn]] inline void parse_fail(const std::filesystem::path& path, int line,
                                    const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(line) + ": " + what);
}

// Reads all lines, checks the version header, and returns (line_no, tokens)
// records with comments and blank lines stripped.
inline std::vector<std::pair<int, std::vector<std::string>>> read_records(
    const std::filesystem::path& path, const std::string& header) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) parse_fail(path, 1, "missing header");
  if (trim(line) != header) {
    parse_fail(path, 1, "bad header, expected '" + header + "'");
  }
  std::vector<std::pair<int, std::vector<std::string>>> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> tokens;
    std::istringstream ts(body);
    std::string tok;
    while (ts >> tok) tokens.push_back(tok);
    records.emplace_back(line_no, std::move(tokens));
  }
  return records;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no \r\n translation
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  return out;
}

// Joins tokens[first..] with single spaces (frame text was tokenized on
// whitespace; the frame grammar does not care about spacing).
inline std::string join_tokens(const std::vector<std::string>& tokens, size_t first) {
  std::string out;
  for (size_t i = first; i < tokens.size(); ++i) {
    if (i > first) out += " ";
    out += tokens[i];
  }
  return out;
}

}  // namespace io
}  // namespace advdialog

#endif  // ADVDIALOG_SRC_IO_UTIL_HPP_
