// rcskit — radar cross section modeling and sensing-channel simulation
// Copyright (C) 2026 rcskit contributors
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
//
// Minimal CSV helpers for the fixed dialect used across the project:
// comma separator, '.' decimal point, LF line endings, mandatory header row.
// Lines starting with '#' are comments and may carry JSON metadata.

#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rcskit/errors.hpp"

namespace rcskit {

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_double_field(const std::string& field, const std::string& context)
{
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin != end && (*begin == ' ' || *begin == '\t'))
        ++begin;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end)
        throw format_error(context + ": cannot parse number '" + field + "'");
    return value;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments; // '#' lines, order preserved
    std::vector<std::size_t> row_lines; // 1-based source line of each row
};

inline CsvTable read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            table.comments.push_back(line);
            continue;
        }
        if (!have_header) {
            table.header = split_csv_line(line);
            have_header = true;
            continue;
        }
        table.rows.push_back(split_csv_line(line));
        table.row_lines.push_back(line_no);
        if (table.rows.back().size() != table.header.size())
            throw format_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " fields, got " +
                               std::to_string(table.rows.back().size()));
    }
    if (!have_header)
        throw format_error(path + ": missing header row");
    return table;
}

inline void require_header(const CsvTable& table, const std::vector<std::string>& expected,
                           const std::string& path)
{
    if (table.header != expected) {
        std::ostringstream os;
        os << path << ": unexpected header '";
        for (std::size_t i = 0; i < table.header.size(); ++i)
            os << (i ? "," : "") << table.header[i];
        os << "'";
        throw format_error(os.str());
    }
}

} // namespace rcskit
