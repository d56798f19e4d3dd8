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

#include "star_thz/csv.hpp"

#include "star_thz/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace star_thz
{

namespace
{
std::string quote(const std::string &s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s)
    {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}
} // namespace

std::string format_cell(const CsvCell &c)
{
    struct Visitor
    {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(const std::string &s) const { return quote(s); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const
        {
            if (std::isnan(v))
                return "nan";
            if (std::isinf(v))
                return v > 0 ? "inf" : "-inf";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.12g", v);
            return buf;
        }
    };
    return std::visit(Visitor{}, c);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns))
{
    if (columns_.empty())
        throw std::invalid_argument("CsvTable: no columns");
}

void CsvTable::add_row(std::vector<CsvCell> row)
{
    if (row.size() != columns_.size())
        throw std::invalid_argument("CsvTable: row has " + std::to_string(row.size()) + " cells, header has " +
                                    std::to_string(columns_.size()));
    rows_.push_back(std::move(row));
}

void CsvTable::set_meta(const std::string &key, const std::string &value)
{
    for (auto &kv : meta_)
        if (kv.first == key)
        {
            kv.second = value;
            return;
        }
    meta_.emplace_back(key, value);
}

std::size_t CsvTable::column(const std::string &name) const
{
    for (std::size_t i = 0; i < columns_.size(); ++i)
        if (columns_[i] == name)
            return i;
    throw std::out_of_range("CsvTable: no column '" + name + "'");
}

std::string CsvTable::str() const
{
    std::ostringstream out;
    out << "# schema=" << csv_schema << "\n";
    for (const auto &[k, v] : meta_)
        out << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i)
        out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto &row : rows_)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << format_cell(row[i]);
        out << "\n";
    }
    return out.str();
}

void CsvTable::write(const std::string &path) const
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw ConfigError(path + ": cannot open for writing");
    f << str();
    if (!f)
        throw ConfigError(path + ": write failed");
}

} // namespace star_thz
