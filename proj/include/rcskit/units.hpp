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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rcskit {

inline constexpr double speed_of_light_m_s = 299792458.0;
inline constexpr double pi = std::numbers::pi;

/// Power ratio from decibels, 10^(x/10).
inline double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

/// Decibels from a positive power ratio, 10*log10(x). Throws for x <= 0.
inline double linear_to_db(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("linear_to_db: argument must be > 0");
    return 10.0 * std::log10(x);
}

/// Wavelength in meters for a carrier given in GHz.
inline double wavelength_m(double freq_ghz)
{
    if (!(freq_ghz > 0.0))
        throw std::domain_error("wavelength_m: frequency must be > 0");
    return speed_of_light_m_s / (freq_ghz * 1e9);
}

inline double deg_to_rad(double d) { return d * pi / 180.0; }
inline double rad_to_deg(double r) { return r * 180.0 / pi; }

/// Wrap an angle into [0, 360).
inline double wrap_deg_360(double a)
{
    double r = std::fmod(a, 360.0);
    if (r < 0.0)
        r += 360.0;
    if (r >= 360.0) // fmod rounding can land exactly on 360
        r -= 360.0;
    return r;
}

/// Shortest signed angular distance, wrapped into (-180, 180].
inline double wrap_deg_180(double a)
{
    double r = std::fmod(a + 180.0, 360.0);
    if (r <= 0.0)
        r += 360.0;
    return r - 180.0;
}

/// Wrap an angle in radians into (-pi, pi].
inline double wrap_rad_pi(double a)
{
    double r = std::fmod(a + pi, 2.0 * pi);
    if (r <= 0.0)
        r += 2.0 * pi;
    return r - pi;
}

} // namespace rcskit
