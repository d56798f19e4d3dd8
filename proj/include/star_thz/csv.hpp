// SPDX-License-Identifier: Apache-2.0
//
// star-thz-perf: performance analysis of STAR-RIS assisted NOMA THz links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef STAR_THZ_CSV_HPP
#define STAR_THZ_CSV_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace star_thz
{

inline constexpr const char *csv_schema = "star-thz-perf/v1";

// Empty cell, text, integer or real. Reals print with 12 significant digits,
// non-finite reals as nan / inf / -inf.
using CsvCell = std::variant<std::monostate, std::string, long long, double>;

std::string format_cell(const CsvCell &c);

// Layout: "# schema=star-thz-perf/v1", then "# key=value" metadata lines, the
// header row and the data rows. Text cells are quoted when they contain a comma,
// a quote or a line break.
class CsvTable
{
  public:
    explicit CsvTable(std::vector<std::string> columns);

    const std::vector<std::string> &columns() const { return columns_; }
    const std::vector<std::vector<CsvCell>> &rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    // std::invalid_argument when the row width differs from the header.
    void add_row(std::vector<CsvCell> row);
    void set_meta(const std::string &key, const std::string &value);
    // Column index; std::out_of_range for an unknown name.
    std::size_t column(const std::string &name) const;

    std::string str() const;
    // ConfigError when the file cannot be written.
    void write(const std::string &path) const;

  private:
    std::vector<std::string> columns_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<CsvCell>> rows_;
};

} // namespace star_thz

#endif
