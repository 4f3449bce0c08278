// Copyright 2026 The trafsample Authors
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

#ifndef TRAFSAMPLE_CSV_H_
#define TRAFSAMPLE_CSV_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace trafsample {

// RFC-4180 reader: quoted fields may contain commas, doubled quotes and line
// breaks. CRLF and LF line endings are both accepted. Completely empty lines
// are skipped.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into `fields`. Returns false at end of input.
  // Throws Error(kMalformedRow) on an unterminated quoted field or on stray
  // characters after a closing quote.
  bool Next(std::vector<std::string>& fields);

  // Physical line on which the most recently returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

std::string CsvField(std::string_view field);
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

std::string_view Trim(std::string_view s);

}  // namespace trafsample

#endif  // TRAFSAMPLE_CSV_H_
