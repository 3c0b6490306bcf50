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
// Drop-based Monte Carlo simulator of the cascaded sensing target channel:
// per-drop geometry, RCS-driven path loss (A only), cascaded two-hop
// multipath with the beam pattern applied at the target (B1, B2 only), and
// the per-drop statistics path loss / RMS delay spread / circular azimuth
// angle spread.
//
// Cluster structure per hop: cluster 0 is a deterministic specular bounce at
// the line-of-sight delay and azimuth, boosted by a Ricean-style K factor;
// clusters 1..n-1 are scattered, with exponential excess delays, normal
// azimuth offsets and an exponential power decay profile. Every drop draws
// from a stream seeded by hash(master seed, drop index), so results do not
// depend on evaluation order or worker count.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rcskit/model.hpp"
#include "rcskit/rng.hpp"
#include "rcskit/stats.hpp"
#include "rcskit/units.hpp"

namespace rcskit {

// ------------------------------------------------------------ configuration

struct Scenario {
    double cell_radius_m = 100.0;
    std::array<double, 2> bs_position_m{0.0, 0.0};
    double bs_height_m = 10.0;
    double target_height_m = 1.5;
    double min_range_m = 10.0;
};

struct ClusterCfg {
    int n1 = 16; // clusters on the Tx-target hop
    int n2 = 16; // clusters on the target-Rx hop
    double delay_scale_tx_s = 50e-9;
    double delay_scale_rx_s = 50e-9;
    double angle_std_tx_deg = 45.0;
    double angle_std_rx_deg = 45.0;
    double power_decay_db = 3.0; // per scattered-cluster index
    double specular_k_db = 12.0; // specular bounce over the 0th scattered level
};

enum class SenseMode { monostatic, bistatic };

struct BackgroundCfg {
    bool enabled = false;
    /// Background tap power relative to the total target-channel power.
    double power_offset_db = -20.0;
};

struct SimConfig {
    Scenario scenario;
    double carrier_freq_ghz = 28.0;
    std::string target_label = "UAV";
    int drops = 1000;
    std::uint64_t seed = 1;
    ClusterCfg cluster;
    SenseMode mode = SenseMode::monostatic;
    std::array<double, 2> rx_position_m{0.0, 0.0};
    BackgroundCfg background;
    int workers = 1;

    void validate() const
    {
        if (drops < 1)
            throw config_error("sim config: drops must be >= 1");
        if (cluster.n1 < 1 || cluster.n2 < 1)
            throw config_error("sim config: cluster counts must be >= 1");
        if (!(scenario.min_range_m > 0.0) ||
            !(scenario.cell_radius_m > scenario.min_range_m))
            throw config_error("sim config: need cell_radius > min_range > 0");
        if (!(carrier_freq_ghz > 0.0))
            throw config_error("sim config: carrier frequency must be > 0");
        if (workers < 1)
            throw config_error("sim config: workers must be >= 1");
    }
};

// ------------------------------------------------------------------- types

struct TargetInstance {
    std::array<double, 2> position_m;
    double heading_deg;
    double b2_linear;
    double r1_m;
    double r2_m;
};

struct HalfLinkPath {
    double delay_s;
    double azimuth_at_target_deg;  // arrival (Tx hop) / departure (Rx hop) at the target
    double azimuth_at_station_deg; // departure at Tx / arrival at Rx
    double power;
    double phase_rad;
};

struct CascadedPath {
    double delay_s;
    double aoa_rx_deg;
    double power;
    double phase_rad;
};

struct PathSet {
    std::vector<CascadedPath> paths;

    double total_power() const
    {
        double acc = 0.0;
        for (const auto& p : paths)
            acc += p.power;
        return acc;
    }
};

struct DropResult {
    double path_loss_db;
    double rms_delay_spread_s;
    double azimuth_angle_spread_deg;
    double r1_m;
    double r2_m;
};

// --------------------------------------------------------------- geometry

namespace detail {

inline double bearing_deg(const std::array<double, 2>& from, const std::array<double, 2>& to)
{
    return wrap_deg_360(rad_to_deg(std::atan2(to[1] - from[1], to[0] - from[0])));
}

inline double distance_3d(const std::array<double, 2>& a, double ha,
                          const std::array<double, 2>& b, double hb)
{
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = ha - hb;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace detail

/// Place the target area-uniformly in the annulus [min_range, cell_radius]
/// around the BS, draw a uniform heading and one fluctuation factor.
inline TargetInstance gen_drop_geometry(const SimConfig& cfg, const UnifiedRcsModel& model,
                                        RandomStream& rng)
{
    const double r0 = cfg.scenario.min_range_m;
    const double r1 = cfg.scenario.cell_radius_m;
    const double r = std::sqrt(rng.uniform01() * (r1 * r1 - r0 * r0) + r0 * r0);
    const double az = rng.uniform(0.0, 2.0 * pi);

    TargetInstance t;
    t.position_m = {cfg.scenario.bs_position_m[0] + r * std::cos(az),
                    cfg.scenario.bs_position_m[1] + r * std::sin(az)};
    t.heading_deg = rng.uniform(0.0, 360.0);
    t.b2_linear = sample_B2(model.b2, rng);
    t.r1_m = detail::distance_3d(cfg.scenario.bs_position_m, cfg.scenario.bs_height_m,
                                 t.position_m, cfg.scenario.target_height_m);
    t.r2_m = cfg.mode == SenseMode::monostatic
                 ? t.r1_m
                 : detail::distance_3d(cfg.rx_position_m, cfg.scenario.bs_height_m,
                                       t.position_m, cfg.scenario.target_height_m);
    return t;
}

/// Large-scale path loss of the two-hop link using only the A component:
/// PL = 10 log10( (4 pi)^3 r1^2 r2^2 / (lambda^2 A_linear) ), unity gains.
inline double target_path_loss(double r1_m, double r2_m, double lambda_m, double a_dbsm)
{
    if (!(r1_m > 0.0) || !(r2_m > 0.0) || !(lambda_m > 0.0))
        throw std::domain_error("target_path_loss: inputs must be > 0");
    return linear_to_db(std::pow(4.0 * pi, 3) * r1_m * r1_m * r2_m * r2_m /
                        (lambda_m * lambda_m)) -
           a_dbsm;
}

/// One hop's cluster set. Cluster 0 is the deterministic specular bounce;
/// scattered clusters share one azimuth offset draw for their target-side
/// and station-side angles (mirror-geometry stand-in). Powers normalized to
/// sum to 1.
inline std::vector<HalfLinkPath> gen_half_link(int n_clusters, double delay_scale_s,
                                               double angle_std_deg, double power_decay_db,
                                               double specular_k_db, double los_delay_s,
                                               double los_azimuth_at_target_deg,
                                               double los_azimuth_at_station_deg,
                                               RandomStream& rng)
{
    if (n_clusters < 1)
        throw std::domain_error("gen_half_link: need at least one cluster");
    std::vector<HalfLinkPath> paths;
    paths.reserve(std::size_t(n_clusters));

    HalfLinkPath specular;
    specular.delay_s = los_delay_s;
    specular.azimuth_at_target_deg = wrap_deg_360(los_azimuth_at_target_deg);
    specular.azimuth_at_station_deg = wrap_deg_360(los_azimuth_at_station_deg);
    specular.power = db_to_linear(specular_k_db);
    specular.phase_rad = rng.uniform(0.0, 2.0 * pi);
    paths.push_back(specular);

    for (int i = 1; i < n_clusters; ++i) {
        HalfLinkPath p;
        p.delay_s = los_delay_s + rng.exponential(delay_scale_s);
        const double offset = rng.normal(0.0, angle_std_deg);
        p.azimuth_at_target_deg = wrap_deg_360(los_azimuth_at_target_deg + offset);
        p.azimuth_at_station_deg = wrap_deg_360(los_azimuth_at_station_deg + offset);
        p.power = db_to_linear(-double(i) * power_decay_db);
        p.phase_rad = rng.uniform(0.0, 2.0 * pi);
        paths.push_back(p);
    }

    double total = 0.0;
    for (const auto& p : paths)
        total += p.power;
    for (auto& p : paths)
        p.power /= total;
    return paths;
}

/// Cascade the two hops through the target. Pattern weighting uses the
/// geometric mean of the pattern at the arrival and departure azimuths
/// (relative to the heading); on the monostatic diagonal (equal angles) it
/// reduces exactly to the measured pattern value. The per-drop b2 draw
/// scales every pair once.
inline PathSet cascade_paths(const std::vector<HalfLinkPath>& tx_paths,
                             const std::vector<HalfLinkPath>& rx_paths,
                             const UnifiedRcsModel& model, double heading_deg, double b2_linear)
{
    if (tx_paths.empty() || rx_paths.empty())
        throw std::domain_error("cascade_paths: empty half-link path list");
    if (!(b2_linear > 0.0))
        throw std::domain_error("cascade_paths: b2 draw must be > 0");

    std::vector<double> g_tx(tx_paths.size()), g_rx(rx_paths.size());
    for (std::size_t i = 0; i < tx_paths.size(); ++i)
        g_tx[i] = db_to_linear(
            0.5 * eval_B1(model.b1, tx_paths[i].azimuth_at_target_deg - heading_deg));
    for (std::size_t j = 0; j < rx_paths.size(); ++j)
        g_rx[j] = db_to_linear(
            0.5 * eval_B1(model.b1, rx_paths[j].azimuth_at_target_deg - heading_deg));

    PathSet set;
    set.paths.reserve(tx_paths.size() * rx_paths.size());
    for (std::size_t i = 0; i < tx_paths.size(); ++i) {
        for (std::size_t j = 0; j < rx_paths.size(); ++j) {
            CascadedPath p;
            p.delay_s = tx_paths[i].delay_s + rx_paths[j].delay_s;
            p.aoa_rx_deg = rx_paths[j].azimuth_at_station_deg;
            p.power = tx_paths[i].power * g_tx[i] * rx_paths[j].power * g_rx[j] * b2_linear;
            p.phase_rad = std::fmod(tx_paths[i].phase_rad + rx_paths[j].phase_rad, 2.0 * pi);
            set.paths.push_back(p);
        }
    }
    return set;
}

/// Power-weighted second central moment of the delays.
inline double rms_delay_spread(const PathSet& set)
{
    const double total = set.total_power();
    if (!(total > 0.0))
        throw std::domain_error("rms_delay_spread: total power must be > 0");
    double m1 = 0.0, m2 = 0.0;
    for (const auto& p : set.paths) {
        m1 += p.power * p.delay_s;
        m2 += p.power * p.delay_s * p.delay_s;
    }
    m1 /= total;
    m2 /= total;
    return std::sqrt(std::max(m2 - m1 * m1, 0.0));
}

/// Circular azimuth spread: power-weighted circular mean, then the RMS of
/// deviations wrapped into (-180, 180]. Bounded by 180/sqrt(3) = 103.92 deg.
inline double azimuth_angle_spread(const PathSet& set)
{
    const double total = set.total_power();
    if (!(total > 0.0))
        throw std::domain_error("azimuth_angle_spread: total power must be > 0");
    std::complex<double> resultant = 0.0;
    for (const auto& p : set.paths)
        resultant += p.power * std::polar(1.0, deg_to_rad(p.aoa_rx_deg));
    const double mu_deg = rad_to_deg(std::arg(resultant));
    double acc = 0.0;
    for (const auto& p : set.paths) {
        const double dev = wrap_deg_180(p.aoa_rx_deg - mu_deg);
        acc += p.power * dev * dev;
    }
    return std::sqrt(acc / total);
}

// ------------------------------------------------------------- drop runner

inline DropResult simulate_drop(const SimConfig& cfg, const UnifiedRcsModel& model,
                                std::uint64_t drop_index)
{
    RandomStream rng(derive_stream_seed(cfg.seed, drop_index));
    const TargetInstance target = gen_drop_geometry(cfg, model, rng);

    const double lambda = wavelength_m(cfg.carrier_freq_ghz);
    const double a_dbsm = eval_A(model.a_law, cfg.carrier_freq_ghz).dbsm;

    DropResult result;
    result.r1_m = target.r1_m;
    result.r2_m = target.r2_m;
    result.path_loss_db = target_path_loss(target.r1_m, target.r2_m, lambda, a_dbsm);

    const auto& sc = cfg.scenario;
    const std::array<double, 2> rx_pos =
        cfg.mode == SenseMode::monostatic ? sc.bs_position_m : cfg.rx_position_m;
    const double az_target_to_tx = detail::bearing_deg(target.position_m, sc.bs_position_m);
    const double az_tx_to_target = detail::bearing_deg(sc.bs_position_m, target.position_m);
    const double az_target_to_rx = detail::bearing_deg(target.position_m, rx_pos);
    const double az_rx_to_target = detail::bearing_deg(rx_pos, target.position_m);

    const auto tx_paths = gen_half_link(
        cfg.cluster.n1, cfg.cluster.delay_scale_tx_s, cfg.cluster.angle_std_tx_deg,
        cfg.cluster.power_decay_db, cfg.cluster.specular_k_db,
        target.r1_m / speed_of_light_m_s, az_target_to_tx, az_tx_to_target, rng);
    const auto rx_paths = gen_half_link(
        cfg.cluster.n2, cfg.cluster.delay_scale_rx_s, cfg.cluster.angle_std_rx_deg,
        cfg.cluster.power_decay_db, cfg.cluster.specular_k_db,
        target.r2_m / speed_of_light_m_s, az_target_to_rx, az_rx_to_target, rng);

    PathSet paths = cascade_paths(tx_paths, rx_paths, model, target.heading_deg,
                                  target.b2_linear);

    if (cfg.background.enabled) {
        // Constant-power clutter tap at the direct Tx-Rx delay.
        CascadedPath back;
        const double d = detail::distance_3d(sc.bs_position_m, sc.bs_height_m, rx_pos,
                                             sc.bs_height_m);
        back.delay_s = d / speed_of_light_m_s;
        back.aoa_rx_deg = cfg.mode == SenseMode::monostatic
                              ? 0.0
                              : detail::bearing_deg(rx_pos, sc.bs_position_m);
        back.power = paths.total_power() * db_to_linear(cfg.background.power_offset_db);
        back.phase_rad = 0.0;
        paths.paths.push_back(back);
    }

    result.rms_delay_spread_s = rms_delay_spread(paths);
    result.azimuth_angle_spread_deg = azimuth_angle_spread(paths);
    return result;
}

// ---------------------------------------------------------------- summary

struct MetricSummary {
    double mean;
    double median;
    double p05;
    double p25;
    double p75;
    double p95;
};

inline MetricSummary summarize_metric(std::span<const double> v)
{
    return {mean(v),          percentile(v, 0.5),  percentile(v, 0.05),
            percentile(v, 0.25), percentile(v, 0.75), percentile(v, 0.95)};
}

struct SimResult {
    std::vector<DropResult> drops;
    MetricSummary path_loss_db;
    MetricSummary delay_spread_s;
    MetricSummary angle_spread_deg;
};

/// Run all drops. Work is split across cfg.workers threads by drop index;
/// because every drop owns a derived seed, the outputs are identical for any
/// worker count.
inline SimResult run_monte_carlo(const SimConfig& cfg, const UnifiedRcsModel& model)
{
    cfg.validate();
    model.validate();

    SimResult result;
    result.drops.resize(std::size_t(cfg.drops));

    const int workers = std::min<int>(cfg.workers, cfg.drops);
    if (workers <= 1) {
        for (int d = 0; d < cfg.drops; ++d)
            result.drops[std::size_t(d)] = simulate_drop(cfg, model, std::uint64_t(d));
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (int d = w; d < cfg.drops; d += workers)
                    result.drops[std::size_t(d)] = simulate_drop(cfg, model, std::uint64_t(d));
            });
        }
        for (auto& t : pool)
            t.join();
    }

    std::vector<double> pl, ds, as;
    pl.reserve(result.drops.size());
    ds.reserve(result.drops.size());
    as.reserve(result.drops.size());
    for (const auto& d : result.drops) {
        pl.push_back(d.path_loss_db);
        ds.push_back(d.rms_delay_spread_s);
        as.push_back(d.azimuth_angle_spread_deg);
    }
    result.path_loss_db = summarize_metric(pl);
    result.delay_spread_s = summarize_metric(ds);
    result.angle_spread_deg = summarize_metric(as);
    return result;
}

inline SimResult run_monte_carlo(const SimConfig& cfg)
{
    return run_monte_carlo(cfg, builtin_model(cfg.target_label));
}

} // namespace rcskit
