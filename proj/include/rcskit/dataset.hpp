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

#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "rcskit/csv.hpp"
#include "rcskit/errors.hpp"

namespace rcskit {

struct RcsSample {
    double freq_ghz;
    double azimuth_deg;
    double rcs_dbsm;
};

/// Per-angle, per-frequency RCS samples, the fitting pipeline's input.
struct MeasuredRcsDataset {
    std::string target_label;
    std::vector<RcsSample> samples;
    double angle_step_deg = 5.0;

    void validate() const
    {
        std::set<std::pair<double, double>> keys;
        std::map<double, std::set<double>> azimuths_by_freq;
        for (const auto& s : samples) {
            if (s.azimuth_deg < 0.0 || s.azimuth_deg >= 360.0)
                throw std::domain_error("dataset: azimuth " + std::to_string(s.azimuth_deg) +
                                        " outside [0, 360)");
            if (!keys.emplace(s.freq_ghz, s.azimuth_deg).second)
                throw std::domain_error("dataset: duplicate (freq, azimuth) pair (" +
                                        std::to_string(s.freq_ghz) + ", " +
                                        std::to_string(s.azimuth_deg) + ")");
            azimuths_by_freq[s.freq_ghz].insert(s.azimuth_deg);
        }
        for (const auto& [f, az] : azimuths_by_freq)
            if (az.size() < 8)
                throw std::domain_error("dataset: fewer than 8 distinct azimuths at " +
                                        std::to_string(f) + " GHz");
    }

    std::vector<double> frequencies() const
    {
        std::set<double> f;
        for (const auto& s : samples)
            f.insert(s.freq_ghz);
        return {f.begin(), f.end()};
    }
};

/// Shortest round-trip-exact decimal form of a double.
inline std::string format_double(double v)
{
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline void write_dataset_csv(const MeasuredRcsDataset& ds, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    if (!ds.target_label.empty())
        out << "# target: " << ds.target_label << "\n";
    out << "freq_ghz,azimuth_deg,rcs_dbsm\n";
    for (const auto& s : ds.samples)
        out << format_double(s.freq_ghz) << ',' << format_double(s.azimuth_deg) << ','
            << format_double(s.rcs_dbsm) << '\n';
}

inline MeasuredRcsDataset read_dataset_csv(const std::string& path)
{
    const CsvTable table = read_csv(path);
    require_header(table, {"freq_ghz", "azimuth_deg", "rcs_dbsm"}, path);
    MeasuredRcsDataset ds;
    for (const auto& c : table.comments) {
        const std::string tag = "# target: ";
        if (c.rfind(tag, 0) == 0)
            ds.target_label = c.substr(tag.size());
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        const std::string ctx = path + ":" + std::to_string(table.row_lines[i]);
        ds.samples.push_back({parse_double_field(row[0], ctx), parse_double_field(row[1], ctx),
                              parse_double_field(row[2], ctx)});
    }
    ds.validate();
    return ds;
}

} // namespace rcskit
