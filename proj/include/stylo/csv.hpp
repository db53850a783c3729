// stylo/csv.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STYLO_CSV_HPP
#define STYLO_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace stylo::csv {

// RFC-4180-style CSV: quoted fields may contain commas, doubled quotes and
// newlines. Reader tracks the 1-based line each record starts on so parse
// errors can point at the offending input.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Read the next record. Returns false at end of input.
  bool next(std::vector<std::string>& fields, std::size_t* start_line = nullptr);

 private:
  std::istream& in_;
  std::size_t line_ = 1;
};

std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace stylo::csv

#endif  // STYLO_CSV_HPP
