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
// Parameter extraction for the unified RCS model from measured datasets:
//   1. per-frequency mean scattering power (linear-domain angular average),
//   2. linear A(f) regression over frequency,
//   3. piecewise-quadratic beam-pattern fit of the normalized data,
//   4. residual fluctuation fit (lognormal / weibull / gamma MLE) with
//      KL-divergence model selection.
//
// Note the split A + B1 + B2 is identifiable from data only up to constant
// dB offsets between the components; this pipeline fixes that gauge by the
// per-frequency linear angular mean (step 1) and reports parameters in that
// convention.

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rcskit/dataset.hpp"
#include "rcskit/distributions.hpp"
#include "rcskit/errors.hpp"
#include "rcskit/model.hpp"
#include "rcskit/units.hpp"

namespace rcskit {

// ----------------------------------------------------------- A extraction

/// Angular mean at one frequency, taken in the linear domain and reported
/// in dBsm.
inline double extract_A(std::span<const double> rcs_dbsm)
{
    if (rcs_dbsm.empty())
        throw std::domain_error("extract_A: no samples");
    double acc = 0.0;
    for (double v : rcs_dbsm)
        acc += db_to_linear(v);
    return linear_to_db(acc / double(rcs_dbsm.size()));
}

/// extract_A applied per distinct frequency of a dataset; sorted by frequency.
inline std::vector<std::pair<double, double>> extract_A_by_freq(const MeasuredRcsDataset& ds)
{
    std::map<double, std::vector<double>> by_freq;
    for (const auto& s : ds.samples)
        by_freq[s.freq_ghz].push_back(s.rcs_dbsm);
    std::vector<std::pair<double, double>> out;
    out.reserve(by_freq.size());
    for (const auto& [f, values] : by_freq)
        out.emplace_back(f, extract_A(values));
    return out;
}

/// Ordinary least squares of A_dB on frequency. Requires two distinct
/// frequencies; the valid range of the law is the fitted span.
inline LargeScaleLaw fit_A_law(std::span<const std::pair<double, double>> a_per_freq)
{
    if (a_per_freq.size() < 2)
        throw std::domain_error("fit_A_law: need at least 2 frequency points");
    double fmin = a_per_freq.front().first, fmax = a_per_freq.front().first;
    double sx = 0.0, sy = 0.0;
    for (const auto& [f, a] : a_per_freq) {
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
        sx += f;
        sy += a;
    }
    if (fmin == fmax)
        throw std::domain_error("fit_A_law: rank deficient (all frequencies identical)");
    const double n = double(a_per_freq.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [f, a] : a_per_freq) {
        sxx += (f - mx) * (f - mx);
        sxy += (f - mx) * (a - my);
    }
    LargeScaleLaw law;
    law.slope_db_per_ghz = sxy / sxx;
    law.intercept_dbsm = my - law.slope_db_per_ghz * mx;
    law.f_min_ghz = fmin;
    law.f_max_ghz = fmax;
    return law;
}

// ------------------------------------------------------------ normalization

struct NormalizedSample {
    double azimuth_deg;
    double value_db; // sigma_dB - A_dB at the sample's frequency
};

/// Remove the per-frequency mean level; all frequencies are pooled since the
/// beam pattern is treated as frequency-stable.
inline std::vector<NormalizedSample>
normalize_pattern(const MeasuredRcsDataset& ds,
                  std::span<const std::pair<double, double>> a_per_freq)
{
    std::map<double, double> a_map;
    for (const auto& [f, a] : a_per_freq)
        a_map[f] = a;
    std::vector<NormalizedSample> out;
    out.reserve(ds.samples.size());
    for (const auto& s : ds.samples) {
        auto it = a_map.find(s.freq_ghz);
        if (it == a_map.end())
            throw std::domain_error("normalize_pattern: no extracted A for " +
                                    std::to_string(s.freq_ghz) + " GHz");
        out.push_back({s.azimuth_deg, s.rcs_dbsm - it->second});
    }
    return out;
}

// --------------------------------------------------------- beam pattern fit

struct BeamFitOptions {
    std::vector<double> peak_centers_deg{0.0, 90.0, 180.0, 270.0};
    double halfwidth_min_deg = 5.0;
    double halfwidth_max_deg = 60.0;
    double halfwidth_step_deg = 0.25;
    /// Points farther than this multiple of the fitted halfwidth from every
    /// peak center make up the floor estimation set.
    double floor_distance_factor = 1.5;
    /// Fall back to the isotropic pattern when no sector's peak rises at
    /// least this far above the floor.
    double min_prominence_db = 1.0;
    /// Secondary isotropic guard: the piecewise fit must beat a flat fit by
    /// at least this F statistic (protects against noise-driven prominence).
    double min_f_statistic = 3.0;
};

struct SectorFitDiag {
    double center_deg;
    int n_points = 0;
    int n_peak_points = 0;
    double halfwidth_deg = 0.0;
    double offset_db = 0.0;
    double prominence_db = 0.0;
    double sse_db2 = 0.0;
};

struct BeamFitResult {
    BeamPattern pattern;
    bool isotropic_fallback = false;
    double rmse_db = 0.0;
    double f_statistic = 0.0;
    std::vector<SectorFitDiag> sectors;
};

namespace detail {

struct SectorPoint {
    double delta_deg; // signed distance to the sector's peak center
    double value_db;
};

/// Mean of -y and of delta^2; the closed-form offset for a candidate
/// halfwidth is c(w) = mean(-y) - (12/w^2) mean(delta^2) over the peak set.
struct QuadFit {
    double u = 0.0; // 12 / w^2
    double c = 0.0;
};

/// Unconstrained least squares of -y on delta^2 (detection fit).
inline QuadFit quad_regression(std::span<const SectorPoint> pts)
{
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p.delta_deg * p.delta_deg;
        my += -p.value_db;
    }
    mx /= double(pts.size());
    my /= double(pts.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        const double dx = p.delta_deg * p.delta_deg - mx;
        sxx += dx * dx;
        sxy += dx * (-p.value_db - my);
    }
    QuadFit f;
    f.u = sxx > 0.0 ? sxy / sxx : 0.0;
    f.c = my - f.u * mx;
    return f;
}

/// SSE of the clipped model -min{12 (d/w)^2 + c, y_floor} over all sector
/// points, with c solved per candidate w on the unclipped subset. The
/// subset assignment and c are iterated to a fixed point.
inline double clipped_sse(std::span<const SectorPoint> pts, double w, double y_floor,
                          double* c_out)
{
    const double u = 12.0 / (w * w);
    // Start from points above the floor level.
    double c = 0.0;
    int n_quad = 0;
    for (const auto& p : pts) {
        if (p.value_db > -y_floor) {
            c += -p.value_db - u * p.delta_deg * p.delta_deg;
            ++n_quad;
        }
    }
    if (n_quad == 0) {
        // Nothing rises above the floor; treat the whole sector as floor.
        if (c_out)
            *c_out = y_floor;
        double sse = 0.0;
        for (const auto& p : pts)
            sse += (p.value_db + y_floor) * (p.value_db + y_floor);
        return sse;
    }
    c /= double(n_quad);
    for (int iter = 0; iter < 4; ++iter) {
        double cn = 0.0;
        int n = 0;
        for (const auto& p : pts) {
            if (u * p.delta_deg * p.delta_deg + c < y_floor) {
                cn += -p.value_db - u * p.delta_deg * p.delta_deg;
                ++n;
            }
        }
        if (n == 0)
            break;
        cn /= double(n);
        const bool converged = std::abs(cn - c) < 1e-12;
        c = cn;
        if (converged)
            break;
    }
    double sse = 0.0;
    for (const auto& p : pts) {
        const double pred = -std::min(u * p.delta_deg * p.delta_deg + c, y_floor);
        sse += (p.value_db - pred) * (p.value_db - pred);
    }
    if (c_out)
        *c_out = c;
    return sse;
}

} // namespace detail

/// Fit the piecewise-quadratic beam pattern to normalized samples. Peak
/// centers are fixed a priori (sector ownership by nearest center,
/// half-open on the right); per sector the halfwidth is found by coarse
/// grid search with the offset solved in closed form, then refined by
/// golden-section search. The floor comes from points far from every
/// center. Falls back to the isotropic pattern for targets without angular
/// structure.
inline BeamFitResult fit_beam_pattern(std::span<const NormalizedSample> normalized,
                                      const BeamFitOptions& opts = {})
{
    if (opts.peak_centers_deg.empty())
        throw std::domain_error("fit_beam_pattern: need at least one peak center");
    std::vector<double> centers = opts.peak_centers_deg;
    for (auto& c : centers)
        c = wrap_deg_360(c);
    std::sort(centers.begin(), centers.end());
    const std::size_t k_count = centers.size();

    // Sector boundaries at circular midpoints between consecutive centers
    // (walking the circle in increasing angle); each sector is half-open on
    // the right so every azimuth has exactly one owner.
    std::vector<double> boundary_after(k_count);
    for (std::size_t k = 0; k < k_count; ++k) {
        const double next = centers[(k + 1) % k_count];
        double arc = wrap_deg_360(next - centers[k]);
        if (arc == 0.0)
            arc = 360.0; // single center owns the full circle
        boundary_after[k] = wrap_deg_360(centers[k] + arc / 2.0);
    }
    std::vector<SectorDeg> sectors(k_count);
    for (std::size_t k = 0; k < k_count; ++k)
        sectors[k] = {boundary_after[(k + k_count - 1) % k_count], boundary_after[k]};

    std::vector<std::vector<detail::SectorPoint>> pts(k_count);
    std::vector<double> all_values;
    all_values.reserve(normalized.size());
    for (const auto& s : normalized) {
        for (std::size_t k = 0; k < k_count; ++k) {
            if (sectors[k].contains(s.azimuth_deg)) {
                pts[k].push_back({wrap_deg_180(s.azimuth_deg - centers[k]), s.value_db});
                break;
            }
        }
        all_values.push_back(s.value_db);
    }
    for (std::size_t k = 0; k < k_count; ++k) {
        if (pts[k].size() < 3) {
            std::ostringstream os;
            os << "sector " << k << " (center " << centers[k] << " deg): only " << pts[k].size()
               << " points, need 3";
            throw fit_error("fit_beam_pattern", os.str());
        }
    }

    // Provisional floor: the median survives the peaks for patterns whose
    // mainlobes cover less than half the circle.
    std::vector<double> sorted_vals = all_values;
    std::nth_element(sorted_vals.begin(), sorted_vals.begin() + sorted_vals.size() / 2,
                     sorted_vals.end());
    const double floor0_db = sorted_vals[sorted_vals.size() / 2];
    const double y_floor0 = -floor0_db;

    BeamFitResult res;
    res.sectors.resize(k_count);

    std::vector<double> fitted_w(k_count), fitted_c(k_count);
    auto fit_sector = [&](std::size_t k, double y_floor) {
        // Coarse grid over the halfwidth, offset in closed form per
        // candidate, then golden-section refinement around the best cell.
        double best_w = opts.halfwidth_min_deg, best_sse = std::numeric_limits<double>::max();
        for (double w = opts.halfwidth_min_deg; w <= opts.halfwidth_max_deg + 1e-9;
             w += opts.halfwidth_step_deg) {
            const double sse = detail::clipped_sse(pts[k], w, y_floor, nullptr);
            if (sse < best_sse) {
                best_sse = sse;
                best_w = w;
            }
        }
        double lo = std::max(opts.halfwidth_min_deg, best_w - opts.halfwidth_step_deg);
        double hi = std::min(opts.halfwidth_max_deg, best_w + opts.halfwidth_step_deg);
        constexpr double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = detail::clipped_sse(pts[k], x1, y_floor, nullptr);
        double f2 = detail::clipped_sse(pts[k], x2, y_floor, nullptr);
        for (int it = 0; it < 60 && hi - lo > 1e-7; ++it) {
            if (f1 < f2) {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - gr * (hi - lo);
                f1 = detail::clipped_sse(pts[k], x1, y_floor, nullptr);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + gr * (hi - lo);
                f2 = detail::clipped_sse(pts[k], x2, y_floor, nullptr);
            }
        }
        double c_fit = 0.0;
        const double w_fit = 0.5 * (lo + hi);
        const double sse = detail::clipped_sse(pts[k], w_fit, y_floor, &c_fit);
        fitted_w[k] = w_fit;
        fitted_c[k] = c_fit;
        res.sectors[k].halfwidth_deg = w_fit;
        res.sectors[k].offset_db = c_fit;
        res.sectors[k].sse_db2 = sse;
    };

    auto estimate_floor = [&]() {
        // Power-weighted mean of points far from every center.
        double floor_acc = 0.0;
        int floor_n = 0;
        for (const auto& s : normalized) {
            bool off_peak = true;
            for (std::size_t k = 0; k < k_count; ++k) {
                if (std::abs(wrap_deg_180(s.azimuth_deg - centers[k])) <=
                    opts.floor_distance_factor * fitted_w[k]) {
                    off_peak = false;
                    break;
                }
            }
            if (off_peak) {
                floor_acc += db_to_linear(s.value_db);
                ++floor_n;
            }
        }
        if (floor_n > 0)
            return -linear_to_db(floor_acc / double(floor_n));
        // Mainlobes cover everything; use the lower quartile as the floor.
        std::vector<double> v = all_values;
        std::nth_element(v.begin(), v.begin() + v.size() / 4, v.end());
        return -v[v.size() / 4];
    };

    for (std::size_t k = 0; k < k_count; ++k) {
        res.sectors[k].center_deg = centers[k];
        res.sectors[k].n_points = int(pts[k].size());
        const detail::QuadFit det = detail::quad_regression(pts[k]);
        res.sectors[k].prominence_db = std::max(0.0, -det.c - floor0_db);
    }

    // Pass 1 against the provisional median floor, pass 2 against the
    // refined floor estimate. The second pass matters for shallow peaks,
    // where the clipping level shifts the width/offset ridge noticeably.
    for (std::size_t k = 0; k < k_count; ++k)
        fit_sector(k, y_floor0);
    double y_max = std::max(estimate_floor(), 0.0);
    for (std::size_t k = 0; k < k_count; ++k)
        fit_sector(k, y_max);
    y_max = std::max(estimate_floor(), 0.0);

    for (std::size_t k = 0; k < k_count; ++k) {
        int n_peak = 0;
        for (const auto& p : pts[k])
            if (12.0 / (fitted_w[k] * fitted_w[k]) * p.delta_deg * p.delta_deg + fitted_c[k] <
                y_max)
                ++n_peak;
        res.sectors[k].n_peak_points = n_peak;
    }

    BeamPattern pattern;
    pattern.y_max_db = y_max;
    for (std::size_t k = 0; k < k_count; ++k)
        pattern.peaks.push_back({centers[k], fitted_w[k], fitted_c[k], sectors[k]});
    pattern.validate();

    // Model-vs-flat comparison over all points.
    double mean_all = std::accumulate(all_values.begin(), all_values.end(), 0.0) /
                      double(all_values.size());
    double sse_flat = 0.0, sse_model = 0.0;
    for (const auto& s : normalized) {
        sse_flat += (s.value_db - mean_all) * (s.value_db - mean_all);
        const double pred = eval_B1(pattern, s.azimuth_deg);
        sse_model += (s.value_db - pred) * (s.value_db - pred);
    }
    const double p_model = double(2 * k_count + 1);
    const double dof = std::max(1.0, double(normalized.size()) - p_model);
    res.f_statistic = sse_model < 1e-15
                          ? std::numeric_limits<double>::infinity()
                          : ((sse_flat - sse_model) / (p_model - 1.0)) / (sse_model / dof);

    double max_prom = 0.0;
    for (const auto& d : res.sectors)
        max_prom = std::max(max_prom, d.prominence_db);

    if (max_prom < opts.min_prominence_db || res.f_statistic < opts.min_f_statistic) {
        res.isotropic_fallback = true;
        res.pattern = BeamPattern::make_isotropic();
        double sse_iso = 0.0;
        for (double v : all_values)
            sse_iso += v * v;
        res.rmse_db = std::sqrt(sse_iso / double(all_values.size()));
        return res;
    }

    res.pattern = std::move(pattern);
    res.rmse_db = std::sqrt(sse_model / double(normalized.size()));
    return res;
}

// ------------------------------------------------------------------ metrics

inline double rmse(std::span<const double> measured, std::span<const double> modeled)
{
    if (measured.size() != modeled.size())
        throw std::domain_error("rmse: length mismatch");
    if (measured.empty())
        throw std::domain_error("rmse: empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < measured.size(); ++i) {
        const double d = measured[i] - modeled[i];
        acc += d * d;
    }
    return std::sqrt(acc / double(measured.size()));
}

/// KL divergence between the histogram of `values_db` (equal-width bins over
/// the data range) and a candidate law's per-bin probability mass. Bin
/// masses are floored at 1e-12 before the log.
inline double kl_divergence(std::span<const double> values_db, const FluctuationLaw& law,
                            int bins = 30)
{
    if (values_db.empty())
        throw std::domain_error("kl_divergence: empty input");
    if (bins < 2)
        throw std::domain_error("kl_divergence: need at least 2 bins");
    double lo = values_db[0], hi = values_db[0];
    for (double v : values_db) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) {
        // Degenerate data; widen so a single bin carries all the mass.
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / double(bins);
    std::vector<double> counts(bins, 0.0);
    for (double v : values_db) {
        int b = int((v - lo) / width);
        b = std::clamp(b, 0, bins - 1); // data max lands in the last bin
        counts[b] += 1.0;
    }
    const double n = double(values_db.size());
    double kl = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double p = counts[b] / n;
        if (p <= 0.0)
            continue;
        const double q = std::max(
            fluct_cdf_db(law, lo + width * (b + 1)) - fluct_cdf_db(law, lo + width * b), 1e-12);
        kl += p * (std::log(p) - std::log(q));
    }
    return kl;
}

// --------------------------------------------------------- fluctuation fit

/// MLE candidates for all three families from dB residuals. Weibull and
/// gamma are fit on the linear residuals 10^(r/10).
inline std::map<FluctFamily, FluctuationLaw> fit_fluctuation(std::span<const double> residuals_db)
{
    if (residuals_db.size() < 20)
        throw std::domain_error("fit_fluctuation: need at least 20 residuals");
    const auto [mu, sigma] = normal_mle(residuals_db);

    std::map<FluctFamily, FluctuationLaw> out;
    if (sigma < 1e-6) {
        // Effectively zero-variance input (a dB spread below 1e-6 carries no
        // distributional information): every family degenerates to the
        // constant rather than chasing an unbounded shape parameter.
        for (auto fam : {FluctFamily::lognormal, FluctFamily::weibull, FluctFamily::gamma}) {
            FluctuationLaw law;
            law.family = fam;
            law.mu_db = mu;
            law.sigma_db = 0.0;
            out[fam] = law;
        }
        return out;
    }

    out[FluctFamily::lognormal] = make_lognormal_db(mu, sigma);

    std::vector<double> linear(residuals_db.size());
    std::transform(residuals_db.begin(), residuals_db.end(), linear.begin(), db_to_linear);
    constexpr double euler_gamma = 0.5772156649015329;
    constexpr double db_per_nat = 10.0 / 2.302585092994046; // 10 / ln 10

    {
        const ShapeScale wb = weibull_mle(linear);
        FluctuationLaw law;
        law.family = FluctFamily::weibull;
        law.shape = wb.shape;
        law.scale = wb.scale;
        law.mu_db = db_per_nat * (std::log(wb.scale) - euler_gamma / wb.shape);
        law.sigma_db = db_per_nat * pi / (std::sqrt(6.0) * wb.shape);
        out[FluctFamily::weibull] = law;
    }
    {
        const ShapeScale gm = gamma_mle(linear);
        FluctuationLaw law;
        law.family = FluctFamily::gamma;
        law.shape = gm.shape;
        law.scale = gm.scale;
        law.mu_db = db_per_nat * (std::log(gm.scale) + boost::math::digamma(gm.shape));
        law.sigma_db = db_per_nat * std::sqrt(boost::math::trigamma(gm.shape));
        out[FluctFamily::gamma] = law;
    }
    return out;
}

// ------------------------------------------------------------- full model

struct FitOptions {
    BeamFitOptions beam;
    int kl_bins = 30;
    /// Select lognormal whenever its divergence is within this distance of
    /// the minimum, preferring it over marginal weibull/gamma wins.
    double lognormal_preference = 0.02;
    /// Rescale the fitted pattern to unit angular linear mean and fold the
    /// correction into A. Off by default so parameters stay in the raw
    /// per-frequency-mean gauge.
    bool renormalize_pattern = false;
};

struct FitReport {
    UnifiedRcsModel model;
    double rmse_b1_db = 0.0;
    std::map<FluctFamily, double> kl_by_family;
    FluctFamily chosen_family = FluctFamily::lognormal;
    std::vector<double> residuals_db;
    std::vector<std::pair<double, double>> a_per_freq;
    std::vector<SectorFitDiag> sector_diags;
    bool isotropic_fallback = false;
    double beam_f_statistic = 0.0;
};

namespace detail {

/// Angular linear mean of a pattern on a fine grid.
inline double pattern_linear_mean(const BeamPattern& pattern, double step_deg = 0.05)
{
    if (pattern.isotropic())
        return 1.0;
    double acc = 0.0;
    int n = 0;
    for (double phi = 0.0; phi < 360.0; phi += step_deg) {
        acc += db_to_linear(eval_B1(pattern, phi));
        ++n;
    }
    return acc / double(n);
}

template <typename Fn>
auto run_stage(const char* stage, Fn&& fn)
{
    try {
        return fn();
    } catch (const fit_error&) {
        throw;
    } catch (const std::exception& e) {
        throw fit_error(stage, e.what());
    }
}

} // namespace detail

/// End-to-end fit: A per frequency, A(f) law, beam pattern (or isotropic
/// fallback), residual fluctuation laws, and divergence-based selection.
inline FitReport fit_full_model(const MeasuredRcsDataset& ds, const FitOptions& opts = {})
{
    detail::run_stage("validate", [&] { ds.validate(); return 0; });

    FitReport report;
    report.a_per_freq = detail::run_stage("extract_A", [&] { return extract_A_by_freq(ds); });
    LargeScaleLaw a_law =
        detail::run_stage("fit_A_law", [&] { return fit_A_law(report.a_per_freq); });

    const auto normalized = detail::run_stage(
        "normalize_pattern", [&] { return normalize_pattern(ds, report.a_per_freq); });

    BeamFitResult beam = detail::run_stage(
        "fit_beam_pattern", [&] { return fit_beam_pattern(normalized, opts.beam); });
    report.rmse_b1_db = beam.rmse_db;
    report.isotropic_fallback = beam.isotropic_fallback;
    report.sector_diags = beam.sectors;
    report.beam_f_statistic = beam.f_statistic;

    // Residual = normalized - fitted pattern; by construction
    // A_dB + B1_dB + residual reproduces each sample exactly.
    report.residuals_db.reserve(normalized.size());
    for (const auto& s : normalized)
        report.residuals_db.push_back(s.value_db - eval_B1(beam.pattern, s.azimuth_deg));

    const auto laws = detail::run_stage(
        "fit_fluctuation", [&] { return fit_fluctuation(report.residuals_db); });
    for (const auto& [fam, law] : laws)
        report.kl_by_family[fam] =
            kl_divergence(report.residuals_db, law, opts.kl_bins);

    FluctFamily best = FluctFamily::lognormal;
    double best_kl = std::numeric_limits<double>::max();
    for (const auto& [fam, kl] : report.kl_by_family) {
        if (kl < best_kl) {
            best_kl = kl;
            best = fam;
        }
    }
    if (report.kl_by_family.at(FluctFamily::lognormal) <= best_kl + opts.lognormal_preference)
        best = FluctFamily::lognormal;
    report.chosen_family = best;

    UnifiedRcsModel model;
    model.target_label = ds.target_label;
    model.a_law = a_law;
    model.b1 = beam.pattern;
    model.b2 = laws.at(best);

    if (opts.renormalize_pattern && !model.b1.isotropic()) {
        const double m_db = linear_to_db(detail::pattern_linear_mean(model.b1));
        for (auto& p : model.b1.peaks)
            p.offset_db += m_db;
        model.b1.y_max_db += m_db;
        model.a_law.intercept_dbsm += m_db;
        if (model.b1.y_max_db < 0.0)
            throw fit_error("renormalize", "pattern floor became negative after rescaling");
    }

    model.validate();
    report.model = std::move(model);
    return report;
}

// ------------------------------------------------------------- report JSON

inline nlohmann::json fit_report_to_json(const FitReport& r)
{
    nlohmann::json j;
    j["rmse_b1"] = r.rmse_b1_db;
    nlohmann::json kl;
    for (const auto& [fam, v] : r.kl_by_family)
        kl[to_string(fam)] = v;
    j["kl_by_family"] = std::move(kl);
    j["chosen_family"] = to_string(r.chosen_family);
    j["isotropic_fallback"] = r.isotropic_fallback;
    j["beam_f_statistic"] = r.beam_f_statistic;
    j["n_residuals"] = r.residuals_db.size();
    nlohmann::json apf = nlohmann::json::array();
    for (const auto& [f, a] : r.a_per_freq)
        apf.push_back({f, a});
    j["a_per_freq"] = std::move(apf);
    nlohmann::json sectors = nlohmann::json::array();
    for (const auto& s : r.sector_diags)
        sectors.push_back({{"center_deg", s.center_deg},
                           {"n_points", s.n_points},
                           {"n_peak_points", s.n_peak_points},
                           {"halfwidth_deg", s.halfwidth_deg},
                           {"offset_db", s.offset_db},
                           {"prominence_db", s.prominence_db},
                           {"sse_db2", s.sse_db2}});
    j["sectors"] = std::move(sectors);
    return j;
}

} // namespace rcskit
