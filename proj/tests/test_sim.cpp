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

#include <catch2/catch_amalgamated.hpp>

#include "rcskit/sim.hpp"
#include "support/synthetic.hpp"

using namespace rcskit;

namespace {

SimConfig test_config(const std::string& target = "UAV")
{
    SimConfig cfg;
    cfg.target_label = target;
    cfg.drops = 200;
    cfg.seed = 42;
    return cfg;
}

} // namespace

// ========================================================= gen_drop_geometry

TEST_CASE("gen_drop_geometry: degenerate annulus pins the range")
{
    SimConfig cfg = test_config();
    cfg.scenario.min_range_m = 100.0 - 1e-9;
    cfg.scenario.cell_radius_m = 100.0;
    cfg.scenario.bs_height_m = 1.5; // equal heights: r1 is the horizontal range
    cfg.scenario.target_height_m = 1.5;
    RandomStream rng(1);
    const auto& model = builtin_model("UAV");
    for (int i = 0; i < 100; ++i) {
        const auto t = gen_drop_geometry(cfg, model, rng);
        REQUIRE(t.r1_m == Catch::Approx(100.0).margin(1e-6));
        REQUIRE(t.r2_m == t.r1_m);
        REQUIRE(t.heading_deg >= 0.0);
        REQUIRE(t.heading_deg < 360.0);
        REQUIRE(t.b2_linear > 0.0);
    }
}

TEST_CASE("gen_drop_geometry: horizontal range follows the area-uniform law")
{
    SimConfig cfg = test_config();
    cfg.scenario.min_range_m = 10.0;
    cfg.scenario.cell_radius_m = 100.0;
    cfg.scenario.bs_height_m = 1.5;
    cfg.scenario.target_height_m = 1.5;
    RandomStream rng(2);
    const auto& model = builtin_model("Human");
    const std::size_t n = 100000;
    std::vector<double> ranges;
    ranges.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        ranges.push_back(gen_drop_geometry(cfg, model, rng).r1_m);
    const double r0 = 10.0, r1 = 100.0;
    const double d = testsupport::ks_statistic(ranges, [&](double r) {
        if (r <= r0)
            return 0.0;
        if (r >= r1)
            return 1.0;
        return (r * r - r0 * r0) / (r1 * r1 - r0 * r0);
    });
    REQUIRE(d < testsupport::ks_critical_001(n));
}

TEST_CASE("gen_drop_geometry: fixed seed reproduces the sequence")
{
    SimConfig cfg = test_config();
    const auto& model = builtin_model("Vehicle");
    RandomStream a(99), b(99);
    for (int i = 0; i < 50; ++i) {
        const auto ta = gen_drop_geometry(cfg, model, a);
        const auto tb = gen_drop_geometry(cfg, model, b);
        REQUIRE(ta.position_m[0] == tb.position_m[0]);
        REQUIRE(ta.position_m[1] == tb.position_m[1]);
        REQUIRE(ta.heading_deg == tb.heading_deg);
        REQUIRE(ta.b2_linear == tb.b2_linear);
    }
}

// ========================================================== target_path_loss

TEST_CASE("target_path_loss: unit case and dB-linear behavior")
{
    REQUIRE(target_path_loss(1.0, 1.0, 1.0, 0.0) == Catch::Approx(32.98).margin(0.01));
    // +10 dB of A takes exactly 10 dB off the path loss.
    REQUIRE(target_path_loss(10.0, 10.0, 0.01, 10.0) ==
            Catch::Approx(target_path_loss(10.0, 10.0, 0.01, 0.0) - 10.0).margin(1e-12));
    // Doubling one range adds 20 log10(2) = 6.02 dB.
    REQUIRE(target_path_loss(20.0, 10.0, 0.01, 0.0) -
                target_path_loss(10.0, 10.0, 0.01, 0.0) ==
            Catch::Approx(6.0206).margin(1e-4));
    REQUIRE_THROWS_AS(target_path_loss(0.0, 1.0, 1.0, 0.0), std::domain_error);
}

// ============================================================= gen_half_link

TEST_CASE("gen_half_link: single cluster is the bare specular bounce")
{
    RandomStream rng(3);
    const auto paths = gen_half_link(1, 50e-9, 30.0, 2.0, 12.0, 100e-9, 10.0, 190.0, rng);
    REQUIRE(paths.size() == 1);
    REQUIRE(paths[0].delay_s == 100e-9);
    REQUIRE(paths[0].azimuth_at_target_deg == 10.0);
    REQUIRE(paths[0].azimuth_at_station_deg == 190.0);
    REQUIRE(paths[0].power == 1.0);
}

TEST_CASE("gen_half_link: zero decay and zero specular boost give equal powers")
{
    RandomStream rng(4);
    const auto paths = gen_half_link(8, 50e-9, 30.0, 0.0, 0.0, 0.0, 0.0, 180.0, rng);
    for (const auto& p : paths)
        REQUIRE(p.power == Catch::Approx(1.0 / 8.0).margin(1e-12));
}

TEST_CASE("gen_half_link: powers normalize and delays respect the LOS bound")
{
    RandomStream rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto paths = gen_half_link(16, 50e-9, 45.0, 3.0, 12.0, 70e-9, 33.0, 213.0, rng);
        double total = 0.0;
        for (const auto& p : paths) {
            total += p.power;
            REQUIRE(p.delay_s >= 70e-9);
            REQUIRE(p.power > 0.0);
            REQUIRE(p.azimuth_at_target_deg >= 0.0);
            REQUIRE(p.azimuth_at_target_deg < 360.0);
        }
        REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("gen_half_link: scattered excess delays have the configured mean")
{
    RandomStream rng(6);
    const double scale = 50e-9;
    double acc = 0.0;
    std::size_t count = 0;
    while (count < 100000) {
        const auto paths = gen_half_link(9, scale, 30.0, 2.0, 12.0, 0.0, 0.0, 180.0, rng);
        for (std::size_t i = 1; i < paths.size(); ++i) {
            acc += paths[i].delay_s;
            ++count;
        }
    }
    REQUIRE(acc / double(count) == Catch::Approx(scale).epsilon(0.01));
}

// ============================================================= cascade_paths

TEST_CASE("cascade_paths: 1x1 isotropic cascade")
{
    const auto& human = builtin_model("Human");
    std::vector<HalfLinkPath> tx{{100e-9, 10.0, 190.0, 1.0, 0.3}};
    std::vector<HalfLinkPath> rx{{120e-9, 10.0, 190.0, 1.0, 0.4}};
    const auto set = cascade_paths(tx, rx, human, 77.0, 1.0);
    REQUIRE(set.paths.size() == 1);
    REQUIRE(set.paths[0].delay_s == Catch::Approx(220e-9).margin(1e-18));
    REQUIRE(set.paths[0].power == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(set.paths[0].phase_rad == Catch::Approx(0.7).margin(1e-12));
    REQUIRE(set.paths[0].aoa_rx_deg == 190.0);
}

TEST_CASE("cascade_paths: pair count and power factorization identity")
{
    RandomStream rng(7);
    const auto& uav = builtin_model("UAV");
    const auto tx = gen_half_link(5, 50e-9, 45.0, 3.0, 12.0, 100e-9, 20.0, 200.0, rng);
    const auto rx = gen_half_link(7, 50e-9, 45.0, 3.0, 12.0, 100e-9, 20.0, 200.0, rng);
    const double heading = 123.0, b2 = 0.8;
    const auto set = cascade_paths(tx, rx, uav, heading, b2);
    REQUIRE(set.paths.size() == 35);

    // Total power factorizes into per-hop pattern-weighted sums times b2.
    double sum_tx = 0.0, sum_rx = 0.0;
    for (const auto& p : tx)
        sum_tx += p.power * db_to_linear(0.5 * eval_B1(uav.b1, p.azimuth_at_target_deg - heading));
    for (const auto& p : rx)
        sum_rx += p.power * db_to_linear(0.5 * eval_B1(uav.b1, p.azimuth_at_target_deg - heading));
    REQUIRE(set.total_power() == Catch::Approx(sum_tx * sum_rx * b2).epsilon(1e-12));
}

TEST_CASE("cascade_paths: heading equivariance")
{
    const auto& vehicle = builtin_model("Vehicle");
    std::vector<HalfLinkPath> tx, rx;
    for (double az : {0.0, 45.0, 170.0, 260.0}) {
        tx.push_back({100e-9, az, az + 180.0, 0.25, 0.0});
        rx.push_back({110e-9, az, az + 180.0, 0.25, 0.0});
    }
    const auto base = cascade_paths(tx, rx, vehicle, 30.0, 1.0);
    // Rotating every azimuth and the heading together changes nothing.
    const double rot = 73.0;
    auto tx_rot = tx;
    auto rx_rot = rx;
    for (auto& p : tx_rot)
        p.azimuth_at_target_deg = wrap_deg_360(p.azimuth_at_target_deg + rot);
    for (auto& p : rx_rot)
        p.azimuth_at_target_deg = wrap_deg_360(p.azimuth_at_target_deg + rot);
    const auto rotated = cascade_paths(tx_rot, rx_rot, vehicle, 30.0 + rot, 1.0);
    for (std::size_t i = 0; i < base.paths.size(); ++i)
        REQUIRE(rotated.paths[i].power == Catch::Approx(base.paths[i].power).epsilon(1e-12));
}

TEST_CASE("cascade_paths: pattern weight on the monostatic diagonal")
{
    const auto& uav = builtin_model("UAV");
    const double heading = 15.0;
    // Both hops exactly on the 90 deg peak vs both on the 45 deg floor.
    std::vector<HalfLinkPath> tx_peak{{0.0, heading + 90.0, 0.0, 1.0, 0.0}};
    std::vector<HalfLinkPath> rx_peak{{0.0, heading + 90.0, 0.0, 1.0, 0.0}};
    std::vector<HalfLinkPath> tx_floor{{0.0, heading + 45.0, 0.0, 1.0, 0.0}};
    std::vector<HalfLinkPath> rx_floor{{0.0, heading + 45.0, 0.0, 1.0, 0.0}};
    const double p_peak = cascade_paths(tx_peak, rx_peak, uav, heading, 1.0).paths[0].power;
    const double p_floor = cascade_paths(tx_floor, rx_floor, uav, heading, 1.0).paths[0].power;
    REQUIRE(p_peak / p_floor == Catch::Approx(db_to_linear(6.52 + 4.47)).epsilon(1e-9));
}

TEST_CASE("cascade_paths: domain errors")
{
    const auto& human = builtin_model("Human");
    std::vector<HalfLinkPath> ok{{0.0, 0.0, 0.0, 1.0, 0.0}};
    REQUIRE_THROWS_AS(cascade_paths({}, ok, human, 0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(cascade_paths(ok, ok, human, 0.0, 0.0), std::domain_error);
}

// ==================================================================== spreads

TEST_CASE("rms_delay_spread: closed-form cases")
{
    PathSet single;
    single.paths = {{50e-9, 0.0, 2.0, 0.0}};
    REQUIRE(rms_delay_spread(single) == 0.0);

    const double T = 100e-9;
    PathSet two;
    two.paths = {{0.0, 0.0, 1.0, 0.0}, {T, 0.0, 1.0, 0.0}};
    REQUIRE(rms_delay_spread(two) == Catch::Approx(T / 2.0).epsilon(1e-12));

    PathSet three;
    three.paths = {{0.0, 0.0, 1.0, 0.0}, {T, 0.0, 1.0, 0.0}, {2.0 * T, 0.0, 1.0, 0.0}};
    REQUIRE(rms_delay_spread(three) == Catch::Approx(T * std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    PathSet empty_power;
    empty_power.paths = {};
    REQUIRE_THROWS_AS(rms_delay_spread(empty_power), std::domain_error);
}

TEST_CASE("azimuth_angle_spread: closed-form cases and rotation invariance")
{
    PathSet one;
    one.paths = {{0.0, 123.0, 3.0, 0.0}};
    REQUIRE(azimuth_angle_spread(one) == Catch::Approx(0.0).margin(1e-9));

    PathSet two;
    two.paths = {{0.0, 0.0, 1.0, 0.0}, {0.0, 90.0, 1.0, 0.0}};
    REQUIRE(azimuth_angle_spread(two) == Catch::Approx(45.0).epsilon(1e-9));

    RandomStream rng(8);
    PathSet random_set;
    for (int i = 0; i < 20; ++i)
        random_set.paths.push_back({0.0, rng.uniform(0.0, 360.0), rng.uniform(0.1, 2.0), 0.0});
    const double base = azimuth_angle_spread(random_set);
    for (double rot : {10.0, 133.7, 290.0}) {
        PathSet rotated = random_set;
        for (auto& p : rotated.paths)
            p.aoa_rx_deg = wrap_deg_360(p.aoa_rx_deg + rot);
        REQUIRE(azimuth_angle_spread(rotated) == Catch::Approx(base).margin(1e-9));
    }
}

TEST_CASE("spread bounds hold for random path sets")
{
    // Wrapped deviations lie in (-180, 180], so the spread is bounded by
    // 180 deg outright; the often-quoted 180/sqrt(3) = 103.92 deg is the
    // value attained by a uniform angle distribution, not a hard bound
    // (two antipodal equal-power paths already exceed it).
    RandomStream rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        PathSet set;
        const int n = 1 + int(rng.uniform01() * 30);
        for (int i = 0; i < n; ++i)
            set.paths.push_back({rng.uniform(0.0, 1e-6), rng.uniform(0.0, 360.0),
                                 rng.uniform(1e-6, 1.0), 0.0});
        REQUIRE(rms_delay_spread(set) >= 0.0);
        const double as = azimuth_angle_spread(set);
        REQUIRE(as >= 0.0);
        REQUIRE(as <= 180.0);
    }

    PathSet uniform;
    for (int i = 0; i < 36000; ++i)
        uniform.paths.push_back({0.0, double(i) * 0.01, 1.0, 0.0});
    REQUIRE(azimuth_angle_spread(uniform) == Catch::Approx(103.92).margin(0.05));
}

// =========================================================== run_monte_carlo

TEST_CASE("run_monte_carlo: bitwise determinism across runs")
{
    SimConfig cfg = test_config();
    cfg.drops = 64;
    const auto a = run_monte_carlo(cfg);
    const auto b = run_monte_carlo(cfg);
    for (std::size_t i = 0; i < a.drops.size(); ++i) {
        REQUIRE(a.drops[i].path_loss_db == b.drops[i].path_loss_db);
        REQUIRE(a.drops[i].rms_delay_spread_s == b.drops[i].rms_delay_spread_s);
        REQUIRE(a.drops[i].azimuth_angle_spread_deg == b.drops[i].azimuth_angle_spread_deg);
    }
}

TEST_CASE("run_monte_carlo: worker count does not change the results")
{
    SimConfig cfg = test_config("Vehicle");
    cfg.drops = 101;
    cfg.workers = 1;
    const auto serial = run_monte_carlo(cfg);
    cfg.workers = 4;
    const auto parallel = run_monte_carlo(cfg);
    for (std::size_t i = 0; i < serial.drops.size(); ++i) {
        REQUIRE(serial.drops[i].path_loss_db == parallel.drops[i].path_loss_db);
        REQUIRE(serial.drops[i].rms_delay_spread_s == parallel.drops[i].rms_delay_spread_s);
        REQUIRE(serial.drops[i].azimuth_angle_spread_deg ==
                parallel.drops[i].azimuth_angle_spread_deg);
    }
}

TEST_CASE("run_monte_carlo: swapping B1 for isotropic moves the spreads, not the PL")
{
    SimConfig cfg = test_config("UAV");
    cfg.drops = 128;
    const auto& uav = builtin_model("UAV");
    UnifiedRcsModel flat = uav;
    flat.b1 = BeamPattern::make_isotropic();

    const auto with_pattern = run_monte_carlo(cfg, uav);
    const auto without = run_monte_carlo(cfg, flat);
    int spread_changed = 0;
    for (std::size_t i = 0; i < with_pattern.drops.size(); ++i) {
        // Path loss uses only the A component, so it is bit-identical.
        REQUIRE(with_pattern.drops[i].path_loss_db == without.drops[i].path_loss_db);
        if (with_pattern.drops[i].rms_delay_spread_s != without.drops[i].rms_delay_spread_s ||
            with_pattern.drops[i].azimuth_angle_spread_deg !=
                without.drops[i].azimuth_angle_spread_deg)
            ++spread_changed;
    }
    REQUIRE(spread_changed > 100);
}

TEST_CASE("run_monte_carlo: spreads do not depend on the carrier frequency")
{
    SimConfig cfg = test_config("Vehicle");
    cfg.drops = 128;
    cfg.carrier_freq_ghz = 10.0;
    const auto low = run_monte_carlo(cfg);
    cfg.carrier_freq_ghz = 28.0;
    const auto high = run_monte_carlo(cfg);
    for (std::size_t i = 0; i < low.drops.size(); ++i) {
        REQUIRE(low.drops[i].rms_delay_spread_s == high.drops[i].rms_delay_spread_s);
        REQUIRE(low.drops[i].azimuth_angle_spread_deg ==
                high.drops[i].azimuth_angle_spread_deg);
        REQUIRE(low.drops[i].path_loss_db != high.drops[i].path_loss_db);
    }
}

TEST_CASE("run_monte_carlo: path-loss ordering across targets (reduced drop count)")
{
    std::map<std::string, double> median_pl;
    for (const auto* label : {"UAV", "Vehicle", "Human"}) {
        SimConfig cfg = test_config(label);
        cfg.drops = 2000;
        cfg.carrier_freq_ghz = 10.0;
        median_pl[label] = run_monte_carlo(cfg).path_loss_db.median;
    }
    REQUIRE(median_pl["UAV"] > median_pl["Human"]);
    REQUIRE(median_pl["Human"] > median_pl["Vehicle"]);
}

TEST_CASE("run_monte_carlo: background tap raises the total power and shifts spreads")
{
    SimConfig cfg = test_config("Human");
    cfg.drops = 32;
    cfg.mode = SenseMode::bistatic;
    cfg.rx_position_m = {50.0, 0.0};
    const auto plain = run_monte_carlo(cfg);
    cfg.background.enabled = true;
    cfg.background.power_offset_db = 0.0; // as strong as the whole target channel
    const auto with_back = run_monte_carlo(cfg);
    int changed = 0;
    for (std::size_t i = 0; i < plain.drops.size(); ++i)
        if (plain.drops[i].rms_delay_spread_s != with_back.drops[i].rms_delay_spread_s)
            ++changed;
    REQUIRE(changed > 25);
}

TEST_CASE("empirical_cdf: step probabilities")
{
    const auto single = empirical_cdf(std::vector<double>{5.0});
    REQUIRE(single.size() == 1);
    REQUIRE(single[0] == std::pair<double, double>{5.0, 1.0});

    const auto four = empirical_cdf(std::vector<double>{4.0, 1.0, 3.0, 2.0});
    REQUIRE(four[0] == std::pair<double, double>{1.0, 0.25});
    REQUIRE(four[1] == std::pair<double, double>{2.0, 0.5});
    REQUIRE(four[2] == std::pair<double, double>{3.0, 0.75});
    REQUIRE(four[3] == std::pair<double, double>{4.0, 1.0});

    // Duplicating every value leaves the step function unchanged.
    auto value_at = [](const std::vector<std::pair<double, double>>& cdf, double x) {
        double p = 0.0;
        for (const auto& [v, q] : cdf)
            if (v <= x)
                p = q;
        return p;
    };
    const std::vector<double> base{1.0, 2.0, 7.0};
    const std::vector<double> doubled{1.0, 1.0, 2.0, 2.0, 7.0, 7.0};
    for (double x : {0.5, 1.0, 1.5, 2.0, 6.9, 7.0, 8.0})
        REQUIRE(value_at(empirical_cdf(base), x) == value_at(empirical_cdf(doubled), x));

    REQUIRE_THROWS_AS(empirical_cdf(std::vector<double>{}), std::domain_error);

    // Monotone nondecreasing by construction.
    RandomStream rng(10);
    std::vector<double> values;
    for (int i = 0; i < 500; ++i)
        values.push_back(rng.normal(0.0, 3.0));
    const auto cdf = empirical_cdf(values);
    for (std::size_t i = 1; i < cdf.size(); ++i) {
        REQUIRE(cdf[i].first >= cdf[i - 1].first);
        REQUIRE(cdf[i].second >= cdf[i - 1].second);
    }
}

TEST_CASE("sim config validation")
{
    SimConfig cfg = test_config();
    cfg.drops = 0;
    REQUIRE_THROWS_AS(cfg.validate(), config_error);
    cfg = test_config();
    cfg.cluster.n1 = 0;
    REQUIRE_THROWS_AS(cfg.validate(), config_error);
    cfg = test_config();
    cfg.scenario.min_range_m = 200.0;
    REQUIRE_THROWS_AS(cfg.validate(), config_error);
}
