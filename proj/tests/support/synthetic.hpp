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
// Test-only helpers: synthetic dataset/sweep generators (forward models kept
// independent of the pipeline under test) and small statistics oracles.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "rcskit/dataset.hpp"
#include "rcskit/measurement.hpp"
#include "rcskit/model.hpp"
#include "rcskit/rng.hpp"
#include "rcskit/units.hpp"

namespace testsupport {

/// Dataset synthesized from a model on a regular grid: sigma_dB =
/// A(f) + B1(phi) + B2_dB with one lognormal draw per (freq, angle) sample.
/// Pass sigma_scale = 0 for noiseless data.
inline rcskit::MeasuredRcsDataset synth_dataset(const rcskit::UnifiedRcsModel& model,
                                                const std::vector<double>& freqs_ghz,
                                                double angle_step_deg, std::uint64_t seed,
                                                double sigma_scale = 1.0)
{
    rcskit::RandomStream rng(seed);
    rcskit::MeasuredRcsDataset ds;
    ds.target_label = model.target_label;
    ds.angle_step_deg = angle_step_deg;
    for (double f : freqs_ghz) {
        const double a = model.a_law.slope_db_per_ghz * f + model.a_law.intercept_dbsm;
        for (double phi = 0.0; phi < 360.0 - 1e-9; phi += angle_step_deg) {
            const double b1 = rcskit::eval_B1(model.b1, phi);
            const double b2 =
                sigma_scale == 0.0
                    ? 0.0
                    : rng.normal(model.b2.mu_db, model.b2.sigma_db * sigma_scale);
            ds.samples.push_back({f, phi, a + b1 + b2});
        }
    }
    return ds;
}

/// The 15-point frequency grid used by the round-trip suites: five center
/// frequencies, each with a +-1 GHz sub-band neighbour.
inline std::vector<double> fifteen_frequencies()
{
    std::vector<double> f;
    for (double c : {10.0, 15.0, 20.0, 28.0, 36.0})
        for (double d : {-1.0, 0.0, 1.0})
            f.push_back(c + d);
    return f;
}

/// Forward-model S21 sweep of a point target with a given RCS: constant
/// amplitude sqrt(Pr/Pt) from the radar equation at the center wavelength
/// and linear phase e^{-j 2 pi f tau} at the round-trip delay.
inline rcskit::S21Sweep synth_point_target_sweep(double azimuth_deg, double sigma_dbsm,
                                                 double center_freq_hz, double bandwidth_hz,
                                                 std::size_t n_points, double distance_m,
                                                 double gain_dbi)
{
    rcskit::S21Sweep sweep;
    sweep.azimuth_deg = azimuth_deg;
    sweep.meta = {gain_dbi, gain_dbi, distance_m, distance_m, center_freq_hz};

    const double lambda = rcskit::speed_of_light_m_s / center_freq_hz;
    const double sigma = rcskit::db_to_linear(sigma_dbsm);
    const double gain = rcskit::db_to_linear(gain_dbi);
    const double pr_over_pt = gain * gain * lambda * lambda * sigma /
                              (std::pow(4.0 * rcskit::pi, 3) * std::pow(distance_m, 4));
    const double amplitude = std::sqrt(pr_over_pt);
    const double tau = 2.0 * distance_m / rcskit::speed_of_light_m_s;

    const double f0 = center_freq_hz - bandwidth_hz / 2.0;
    const double df = bandwidth_hz / double(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double f = f0 + double(i) * df;
        sweep.freqs_hz.push_back(f);
        sweep.s21.push_back(std::polar(amplitude, -2.0 * rcskit::pi * f * tau));
    }
    return sweep;
}

/// Kolmogorov-Smirnov statistic of a sample against a CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    std::sort(sample.begin(), sample.end());
    const double n = double(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double c = cdf(sample[i]);
        d = std::max(d, std::abs(c - double(i) / n));
        d = std::max(d, std::abs(c - double(i + 1) / n));
    }
    return d;
}

/// Asymptotic KS critical value at significance 0.01.
inline double ks_critical_001(std::size_t n) { return 1.6276 / std::sqrt(double(n)); }

/// Adaptive Simpson quadrature, the independent oracle for the sine
/// integral.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 30)
{
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fhi, double fmid, double eps,
            int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
        const double fl = f(lmid), fr = f(rmid);
        const double s_whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        const double s_left = (mid - lo) / 6.0 * (flo + 4.0 * fl + fmid);
        const double s_right = (hi - mid) / 6.0 * (fmid + 4.0 * fr + fhi);
        if (d <= 0 || std::abs(s_left + s_right - s_whole) < 15.0 * eps)
            return s_left + s_right + (s_left + s_right - s_whole) / 15.0;
        return rec(lo, mid, flo, fmid, fl, eps / 2.0, d - 1) +
               rec(mid, hi, fmid, fhi, fr, eps / 2.0, d - 1);
    };
    return rec(a, b, fa, fb, fc, tol, depth);
}

} // namespace testsupport
