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
// Scalar distribution primitives used by the fluctuation-factor fitting:
// CDFs for the three candidate families and their maximum-likelihood
// estimators. Weibull and gamma operate on linear (positive) samples.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "rcskit/errors.hpp"

namespace rcskit {

inline double normal_cdf(double x, double mu, double sigma)
{
    if (sigma <= 0.0)
        return x < mu ? 0.0 : 1.0;
    return 0.5 * boost::math::erfc((mu - x) / (sigma * std::sqrt(2.0)));
}

/// CDF of Weibull(shape k, scale lambda) for x >= 0.
inline double weibull_cdf(double x, double shape, double scale)
{
    if (x <= 0.0)
        return 0.0;
    return -std::expm1(-std::pow(x / scale, shape));
}

/// CDF of Gamma(shape k, scale theta) for x >= 0.
inline double gamma_cdf(double x, double shape, double scale)
{
    if (x <= 0.0)
        return 0.0;
    return boost::math::gamma_p(shape, x / scale);
}

struct ShapeScale {
    double shape;
    double scale;
    int iterations;
};

namespace detail {

inline void require_positive_samples(std::span<const double> x, const char* who)
{
    if (x.empty())
        throw std::domain_error(std::string(who) + ": empty sample");
    for (double v : x)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error(std::string(who) + ": samples must be positive and finite");
}

} // namespace detail

/// Weibull MLE by damped Newton iteration on the profile equation for the
/// shape parameter. Converges when the parameter step drops below `tol`.
inline ShapeScale weibull_mle(std::span<const double> x, double tol = 1e-10, int max_iter = 200)
{
    detail::require_positive_samples(x, "weibull_mle");
    const std::size_t n = x.size();
    std::vector<double> lx(n);
    std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
    const double mean_lx = std::accumulate(lx.begin(), lx.end(), 0.0) / double(n);

    // Method-of-moments style start from the log-sample spread.
    double var_lx = 0.0;
    for (double v : lx)
        var_lx += (v - mean_lx) * (v - mean_lx);
    var_lx /= double(n);
    double k = var_lx > 0.0 ? 1.2 / std::sqrt(var_lx) : 1.0;
    if (!(k > 0.0) || !std::isfinite(k))
        k = 1.0;

    int it = 0;
    for (; it < max_iter; ++it) {
        double swk = 0.0, swk_l = 0.0, swk_ll = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = std::pow(x[i], k);
            swk += w;
            swk_l += w * lx[i];
            swk_ll += w * lx[i] * lx[i];
        }
        const double r = swk_l / swk;
        const double f = r - 1.0 / k - mean_lx;
        const double fp = (swk_ll / swk - r * r) + 1.0 / (k * k);
        double step = f / fp;
        // Damp steps that would leave the domain or overshoot wildly.
        while (k - step <= 0.0 || std::abs(step) > 0.5 * k)
            step *= 0.5;
        k -= step;
        if (std::abs(step) < tol)
            break;
    }
    if (it == max_iter)
        throw fit_error("weibull_mle", "no convergence after " + std::to_string(max_iter) +
                                           " iterations (k=" + std::to_string(k) + ")");

    double swk = 0.0;
    for (double v : x)
        swk += std::pow(v, k);
    const double scale = std::pow(swk / double(n), 1.0 / k);
    return {k, scale, it + 1};
}

/// Gamma MLE: Minka's closed-form start, then damped Newton on
/// log(a) - digamma(a) = log(mean) - mean(log x).
inline ShapeScale gamma_mle(std::span<const double> x, double tol = 1e-10, int max_iter = 200)
{
    detail::require_positive_samples(x, "gamma_mle");
    const std::size_t n = x.size();
    double mean = 0.0, mean_lx = 0.0;
    for (double v : x) {
        mean += v;
        mean_lx += std::log(v);
    }
    mean /= double(n);
    mean_lx /= double(n);

    const double s = std::log(mean) - mean_lx;
    if (!(s > 0.0))
        throw fit_error("gamma_mle", "degenerate sample (log-mean gap <= 0)");

    double a = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    int it = 0;
    for (; it < max_iter; ++it) {
        const double f = std::log(a) - boost::math::digamma(a) - s;
        const double fp = 1.0 / a - boost::math::trigamma(a);
        double step = f / fp;
        while (a - step <= 0.0)
            step *= 0.5;
        a -= step;
        if (std::abs(step) < tol)
            break;
    }
    if (it == max_iter)
        throw fit_error("gamma_mle", "no convergence after " + std::to_string(max_iter) +
                                         " iterations (a=" + std::to_string(a) + ")");
    return {a, mean / a, it + 1};
}

/// Sample mean and population standard deviation (the normal-law MLE pair).
inline std::pair<double, double> normal_mle(std::span<const double> x)
{
    if (x.empty())
        throw std::domain_error("normal_mle: empty sample");
    const double n = double(x.size());
    const double mu = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x)
        ss += (v - mu) * (v - mu);
    return {mu, std::sqrt(ss / n)};
}

} // namespace rcskit
