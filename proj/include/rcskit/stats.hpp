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

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rcskit {

/// Empirical CDF: sorted values paired with step probabilities i/n.
inline std::vector<std::pair<double, double>> empirical_cdf(std::span<const double> values)
{
    if (values.empty())
        throw std::domain_error("empirical_cdf: empty input");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<double, double>> cdf;
    cdf.reserve(sorted.size());
    const double n = double(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        cdf.emplace_back(sorted[i], double(i + 1) / n);
    return cdf;
}

/// q-quantile (q in [0,1]) with linear interpolation between order statistics.
inline double percentile(std::span<const double> values, double q)
{
    if (values.empty())
        throw std::domain_error("percentile: empty input");
    if (q < 0.0 || q > 1.0)
        throw std::domain_error("percentile: q must lie in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() == 1)
        return sorted.front();
    const double pos = q * double(sorted.size() - 1);
    const std::size_t lo = std::size_t(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - double(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

inline double median(std::span<const double> values) { return percentile(values, 0.5); }

inline double mean(std::span<const double> values)
{
    if (values.empty())
        throw std::domain_error("mean: empty input");
    double s = 0.0;
    for (double v : values)
        s += v;
    return s / double(values.size());
}

} // namespace rcskit
