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
// Unified RCS model: sigma(f, phi) = A(f) * B1(phi) * B2, with
//   A  — frequency-dependent mean scattering power (dBsm, linear in f),
//   B1 — deterministic azimuth beam pattern (dB, piecewise quadratic with floor),
//   B2 — random per-instance fluctuation (linear factor, lognormal by default).
//
// All evaluation functions are pure; values are immutable after construction
// and safe to share across threads. Random draws take a caller-owned stream.

#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcskit/distributions.hpp"
#include "rcskit/errors.hpp"
#include "rcskit/rng.hpp"
#include "rcskit/units.hpp"

namespace rcskit {

// ---------------------------------------------------------------- A(f) law

/// Linear-in-frequency mean scattering power, A(f) = slope * f + intercept.
/// The law is a fit, valid on [f_min, f_max]; evaluation outside that range
/// is allowed but flagged, never silently trusted.
struct LargeScaleLaw {
    double slope_db_per_ghz = 0.0;
    double intercept_dbsm = 0.0;
    double f_min_ghz = 0.0;
    double f_max_ghz = 0.0;

    void validate() const
    {
        if (!(f_min_ghz < f_max_ghz))
            throw std::domain_error("LargeScaleLaw: empty valid range");
    }
};

struct AEval {
    double dbsm;
    bool extrapolated;
};

inline AEval eval_A(const LargeScaleLaw& law, double freq_ghz)
{
    if (!(freq_ghz > 0.0))
        throw std::domain_error("eval_A: frequency must be > 0");
    law.validate();
    return {law.slope_db_per_ghz * freq_ghz + law.intercept_dbsm,
            freq_ghz < law.f_min_ghz || freq_ghz > law.f_max_ghz};
}

// ------------------------------------------------------------ beam pattern

/// Half-open azimuth interval [lo, hi) in degrees; lo > hi denotes a
/// wrap-around sector such as [315, 45).
struct SectorDeg {
    double lo_deg = 0.0;
    double hi_deg = 0.0;

    double width_deg() const { return wrap_deg_360(hi_deg - lo_deg) == 0.0 ? 360.0 : wrap_deg_360(hi_deg - lo_deg); }

    bool contains(double phi_deg) const
    {
        const double p = wrap_deg_360(phi_deg);
        const double lo = wrap_deg_360(lo_deg);
        const double hi = wrap_deg_360(hi_deg);
        if (lo < hi)
            return p >= lo && p < hi;
        return p >= lo || p < hi; // wrap-around
    }
};

struct BeamPeak {
    double center_deg = 0.0;
    double halfwidth_3db_deg = 1.0; // phi_3dB
    double offset_db = 0.0;         // c_k; peak value is -c_k
    SectorDeg sector;
};

/// Piecewise-quadratic azimuth pattern with a floor:
/// B1_dB(phi) = -min{ 12*((phi - phi_k)/phi_3dB_k)^2 + c_k , Y_max }
/// where k is the unique peak whose sector owns phi. An empty peak list is
/// the isotropic pattern, B1 = 0 dB everywhere.
struct BeamPattern {
    std::vector<BeamPeak> peaks;
    double y_max_db = 0.0;

    bool isotropic() const { return peaks.empty(); }

    static BeamPattern make_isotropic() { return {}; }

    void validate() const
    {
        if (!(y_max_db >= 0.0))
            throw std::domain_error("BeamPattern: Y_max must be >= 0");
        if (peaks.empty())
            return;
        for (const auto& p : peaks)
            if (!(p.halfwidth_3db_deg > 0.0))
                throw std::domain_error("BeamPattern: halfwidth_3db must be > 0");
        // Sectors must partition [0, 360) exactly: widths sum to 360 and no
        // point is owned twice (spot-checked at sector edges and midpoints).
        double total = 0.0;
        for (const auto& p : peaks)
            total += p.sector.width_deg();
        if (std::abs(total - 360.0) > 1e-9)
            throw std::domain_error("BeamPattern: sectors do not cover 360 degrees");
        for (const auto& p : peaks) {
            for (double probe : {p.sector.lo_deg, p.sector.lo_deg + 0.5 * p.sector.width_deg()}) {
                int owners = 0;
                for (const auto& q : peaks)
                    owners += q.sector.contains(probe) ? 1 : 0;
                if (owners != 1)
                    throw std::domain_error("BeamPattern: sectors overlap or leave a gap");
            }
        }
    }
};

inline double eval_B1(const BeamPattern& pattern, double phi_deg)
{
    if (pattern.isotropic())
        return 0.0;
    const double phi = wrap_deg_360(phi_deg);
    for (const auto& p : pattern.peaks) {
        if (!p.sector.contains(phi))
            continue;
        const double delta = wrap_deg_180(phi - p.center_deg);
        const double quad = 12.0 * (delta / p.halfwidth_3db_deg) * (delta / p.halfwidth_3db_deg);
        return -std::min(quad + p.offset_db, pattern.y_max_db);
    }
    throw std::domain_error("eval_B1: no sector owns azimuth " + std::to_string(phi));
}

// ------------------------------------------------------- fluctuation factor

enum class FluctFamily { lognormal, weibull, gamma };

inline std::string to_string(FluctFamily f)
{
    switch (f) {
    case FluctFamily::lognormal: return "lognormal";
    case FluctFamily::weibull: return "weibull";
    case FluctFamily::gamma: return "gamma";
    }
    throw config_error("unknown fluctuation family tag");
}

inline FluctFamily fluct_family_from_string(const std::string& s)
{
    if (s == "lognormal")
        return FluctFamily::lognormal;
    if (s == "weibull")
        return FluctFamily::weibull;
    if (s == "gamma")
        return FluctFamily::gamma;
    throw config_error("unknown fluctuation family '" + s + "'");
}

/// Random per-instance fluctuation of the RCS, a dimensionless linear factor.
/// For the lognormal family the dB value is Normal(mu_db, sigma_db^2).
/// Weibull and gamma parametrize the linear value via (shape, scale);
/// mu_db/sigma_db then hold the implied dB-domain mean and spread.
struct FluctuationLaw {
    FluctFamily family = FluctFamily::lognormal;
    double mu_db = 0.0;
    double sigma_db = 0.0;
    double shape = std::numeric_limits<double>::quiet_NaN();
    double scale = std::numeric_limits<double>::quiet_NaN();

    void validate() const
    {
        if (!(sigma_db >= 0.0))
            throw std::domain_error("FluctuationLaw: sigma must be >= 0");
        if (family != FluctFamily::lognormal && sigma_db > 0.0 &&
            (!(shape > 0.0) || !(scale > 0.0)))
            throw config_error("FluctuationLaw: " + to_string(family) +
                               " requires positive shape and scale");
    }
};

inline FluctuationLaw make_lognormal_db(double mu_db, double sigma_db)
{
    FluctuationLaw law;
    law.family = FluctFamily::lognormal;
    law.mu_db = mu_db;
    law.sigma_db = sigma_db;
    return law;
}

/// Draw one linear fluctuation factor. sigma_db == 0 yields the
/// deterministic value 10^(mu/10) for every family.
inline double sample_B2(const FluctuationLaw& law, RandomStream& rng)
{
    law.validate();
    if (law.sigma_db == 0.0)
        return db_to_linear(law.mu_db);
    switch (law.family) {
    case FluctFamily::lognormal:
        return db_to_linear(rng.normal(law.mu_db, law.sigma_db));
    case FluctFamily::weibull:
        return rng.weibull(law.shape, law.scale);
    case FluctFamily::gamma:
        return rng.gamma(law.shape, law.scale);
    }
    throw config_error("sample_B2: unsupported family tag");
}

/// P(B2_dB <= x_db); weibull/gamma laws live on the linear axis, so the dB
/// threshold is transformed before their CDF applies. The degenerate branch
/// uses the strictly-below convention so a histogram bin whose lower edge
/// sits exactly on the atom still receives its mass.
inline double fluct_cdf_db(const FluctuationLaw& law, double x_db)
{
    if (law.sigma_db == 0.0)
        return x_db > law.mu_db ? 1.0 : 0.0;
    switch (law.family) {
    case FluctFamily::lognormal:
        return normal_cdf(x_db, law.mu_db, law.sigma_db);
    case FluctFamily::weibull:
        return weibull_cdf(db_to_linear(x_db), law.shape, law.scale);
    case FluctFamily::gamma:
        return gamma_cdf(db_to_linear(x_db), law.shape, law.scale);
    }
    throw config_error("fluct_cdf_db: unsupported family tag");
}

// ------------------------------------------------------------ unified model

struct UnifiedRcsModel {
    std::string target_label;
    LargeScaleLaw a_law;
    BeamPattern b1;
    FluctuationLaw b2;
    /// Note fixing what azimuth 0 means for this target.
    std::string heading_convention = "phi = 0 deg faces the target front";

    void validate() const
    {
        a_law.validate();
        b1.validate();
        b2.validate();
    }
};

struct SigmaEval {
    double dbsm;
    double linear_m2;
    bool extrapolated;
};

/// sigma(f, phi) with an externally supplied fluctuation draw. Pass
/// b2_linear = 1 for the deterministic part A*B1 alone.
inline SigmaEval eval_sigma(const UnifiedRcsModel& model, double freq_ghz, double phi_deg,
                            double b2_linear = 1.0)
{
    if (!(b2_linear > 0.0))
        throw std::domain_error("eval_sigma: b2 draw must be > 0");
    const AEval a = eval_A(model.a_law, freq_ghz);
    const double dbsm = a.dbsm + eval_B1(model.b1, phi_deg) + linear_to_db(b2_linear);
    return {dbsm, db_to_linear(dbsm), a.extrapolated};
}

// --------------------------------------------------------- built-in models

namespace detail {

inline BeamPattern four_peak_pattern(double w0, double c0, double w90, double c90, double w180,
                                     double c180, double w270, double c270, double y_max)
{
    BeamPattern p;
    p.y_max_db = y_max;
    p.peaks = {
        {0.0, w0, c0, {315.0, 45.0}},
        {90.0, w90, c90, {45.0, 135.0}},
        {180.0, w180, c180, {135.0, 225.0}},
        {270.0, w270, c270, {225.0, 315.0}},
    };
    return p;
}

} // namespace detail

/// Fitted parameter sets for the three measured reference targets. A-laws are
/// valid on the measured 10-36 GHz span.
inline const std::map<std::string, UnifiedRcsModel>& builtin_models()
{
    static const std::map<std::string, UnifiedRcsModel> models = [] {
        std::map<std::string, UnifiedRcsModel> m;

        UnifiedRcsModel uav;
        uav.target_label = "UAV";
        uav.a_law = {0.31, -9.26, 10.0, 36.0};
        uav.b1 = detail::four_peak_pattern(20.84, 0.68, 10.47, -6.52, 15.41, -5.61, 14.51,
                                           -12.30, 4.47);
        uav.b2 = make_lognormal_db(-0.52, 2.31);
        m.emplace("UAV", uav);

        UnifiedRcsModel vehicle;
        vehicle.target_label = "Vehicle";
        vehicle.a_law = {0.08, 8.21, 10.0, 36.0};
        vehicle.b1 = detail::four_peak_pattern(12.59, -9.61, 30.42, -1.67, 15.79, -10.06, 28.03,
                                               1.56, 7.46);
        vehicle.b2 = make_lognormal_db(-0.53, 2.64);
        m.emplace("Vehicle", vehicle);

        UnifiedRcsModel human;
        human.target_label = "Human";
        human.a_law = {0.16, -4.68, 10.0, 36.0};
        human.b1 = BeamPattern::make_isotropic();
        human.b2 = make_lognormal_db(-0.77, 2.13);
        m.emplace("Human", human);

        for (auto& [name, model] : m)
            model.validate();
        return m;
    }();
    return models;
}

inline const UnifiedRcsModel& builtin_model(const std::string& label)
{
    const auto& m = builtin_models();
    auto it = m.find(label);
    if (it == m.end())
        throw config_error("unknown builtin model '" + label + "'");
    return it->second;
}

} // namespace rcskit
