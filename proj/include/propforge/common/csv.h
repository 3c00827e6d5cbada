// Copyright 2026 The Propforge Authors
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

#ifndef PROPFORGE_COMMON_CSV_H_
#define PROPFORGE_COMMON_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace propforge {

struct CsvRow {
  std::vector<std::string> fields;
  int line = 0;  // 1-based line where the record starts
};

// RFC 4180 records: quoted fields may contain commas, doubled quotes and
// newlines. Lines starting with '#' outside a record are returned in
// `comments` (without the '#') instead of as rows. Blank lines are skipped.
struct CsvDocument {
  std::vector<CsvRow> rows;
  std::vector<std::string> comments;
};

CsvDocument ParseCsv(std::string_view text);

// Quotes the field only when it contains a delimiter, quote or newline.
std::string CsvEscape(std::string_view field);
std::string CsvJoin(const std::vector<std::string>& fields);

}  // namespace propforge

#endif  // PROPFORGE_COMMON_CSV_H_
