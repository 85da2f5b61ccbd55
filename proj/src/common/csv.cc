// Copyright 2026 The sreval Authors. All Rights Reserved.
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

#include "sreval/csv.h"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "sreval/errors.h"

namespace sreval {

namespace {

// Splits one record. Returns false when a quoted field is left open.
bool SplitRecord(std::string_view line, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty()) {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  out.push_back(std::move(field));
  return !quoted;
}

}  // namespace

CsvDocument ParseCsv(std::string_view text, const std::string& source) {
  CsvDocument doc;
  doc.source = source;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_header = false;
  std::vector<std::string> fields;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!SplitRecord(line, fields)) {
      throw ParseError(source, line_no, "unterminated quoted field");
    }
    if (!have_header) {
      doc.header = fields;
      have_header = true;
      continue;
    }
    if (fields.size() != doc.header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(doc.header.size()) + " fields, got " +
                           std::to_string(fields.size()));
    }
    doc.rows.push_back(CsvRow{line_no, fields});
  }
  if (!have_header) throw ParseError(source, 1, "missing header");
  return doc;
}

CsvDocument ReadCsv(const std::filesystem::path& path) {
  return ParseCsv(ReadTextFile(path), path.string());
}

void ExpectHeader(const CsvDocument& doc, std::initializer_list<std::string_view> expected) {
  bool match = doc.header.size() == expected.size();
  std::string want;
  std::size_t i = 0;
  for (std::string_view name : expected) {
    if (match && doc.header[i] != name) match = false;
    if (!want.empty()) want += ",";
    want += name;
    ++i;
  }
  if (!match) throw ParseError(doc.source, 1, "expected header '" + want + "'");
}

std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string() + ": " + std::strerror(errno));
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

double ParseDouble(std::string_view text, const std::string& source, std::size_t line) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(source, line, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long ParseInteger(std::string_view text, const std::string& source, std::size_t line) {
  long long value = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError(source, line, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace sreval
