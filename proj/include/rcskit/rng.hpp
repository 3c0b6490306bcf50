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
#include <cstdint>

#include "rcskit/units.hpp"

namespace rcskit {

/// splitmix64 mixing step. Used both as a seed scrambler and to derive
/// independent per-index stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for the i-th substream of a master seed. Streams derived this way are
/// independent of evaluation order, so work split across any number of
/// workers reproduces the single-threaded result exactly.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index)
{
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/// Deterministic random stream (xoshiro256** core). All distribution
/// transforms are implemented here rather than with <random> adaptors so
/// that a given seed yields identical draws on every platform and
/// standard-library implementation.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed)
    {
        std::uint64_t x = seed;
        for (auto& s : state_) {
            x = splitmix64(x);
            s = x;
        }
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform draw in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform draw in (0, 1]; safe as a logarithm argument.
    double uniform01_open() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Box-Muller transform; consumes exactly two uniforms per call.
    double normal(double mu = 0.0, double sigma = 1.0)
    {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    double exponential(double mean) { return -mean * std::log(uniform01_open()); }

    /// Gamma(shape, scale) draw by Marsaglia-Tsang squeeze; shape < 1 handled
    /// with the usual boost Gamma(shape+1) * U^(1/shape).
    double gamma(double shape, double scale)
    {
        if (shape < 1.0) {
            const double u = uniform01_open();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0)
                continue;
            v = v * v * v;
            const double u = uniform01_open();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
                return d * v * scale;
        }
    }

    /// Weibull(shape k, scale lambda) draw by inverse CDF.
    double weibull(double shape, double scale)
    {
        return scale * std::pow(-std::log(uniform01_open()), 1.0 / shape);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
};

} // namespace rcskit
