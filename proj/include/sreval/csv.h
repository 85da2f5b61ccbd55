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

#ifndef SREVAL_CSV_H_
#define SREVAL_CSV_H_

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace sreval {

struct CsvRow {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

struct CsvDocument {
  std::string source;  // file name used in error messages
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

// Minimal RFC 4180 reader: comma separated, optional double-quoted fields,
// LF or CRLF endings. Blank lines and lines starting with '#' are skipped.
// Every row must have as many fields as the header (ParseError otherwise).
CsvDocument ParseCsv(std::string_view text, const std::string& source);
CsvDocument ReadCsv(const std::filesystem::path& path);

// Throws ParseError at line 1 unless the header equals `expected`.
void ExpectHeader(const CsvDocument& doc, std::initializer_list<std::string_view> expected);

// Quotes a field when it contains a comma, quote or newline.
std::string CsvEscape(std::string_view field);

std::string ReadTextFile(const std::filesystem::path& path);

// Writes through a temporary sibling and renames it into place.
void WriteTextFile(const std::filesystem::path& path, std::string_view content);

// Strict numeric parsing helpers; throw ParseError citing `line`.
double ParseDouble(std::string_view text, const std::string& source, std::size_t line);
long long ParseInteger(std::string_view text, const std::string& source, std::size_t line);

}  // namespace sreval

#endif  // SREVAL_CSV_H_
