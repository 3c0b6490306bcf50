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

#include "rcskit/model.hpp"
#include "support/synthetic.hpp"

using namespace rcskit;

// ================================================================== eval_A

TEST_CASE("eval_A: spot values from the builtin laws")
{
    const LargeScaleLaw uav{0.31, -9.26, 10.0, 36.0};
    REQUIRE(eval_A(uav, 10.0).dbsm == Catch::Approx(-6.16).margin(1e-12));

    const LargeScaleLaw vehicle{0.08, 8.21, 10.0, 36.0};
    REQUIRE(eval_A(vehicle, 28.0).dbsm == Catch::Approx(10.45).margin(1e-12));

    // Zero-frequency limit of the human law is its intercept.
    const LargeScaleLaw human{0.16, -4.68, 10.0, 36.0};
    REQUIRE(eval_A(human, 1e-12).dbsm == Catch::Approx(-4.68).margin(1e-9));
}

TEST_CASE("eval_A: extrapolation flag and domain errors")
{
    const LargeScaleLaw law{0.31, -9.26, 10.0, 36.0};
    REQUIRE_FALSE(eval_A(law, 10.0).extrapolated);
    REQUIRE_FALSE(eval_A(law, 36.0).extrapolated);
    REQUIRE(eval_A(law, 9.99).extrapolated);
    REQUIRE(eval_A(law, 40.0).extrapolated);
    REQUIRE_THROWS_AS(eval_A(law, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(eval_A(law, -5.0), std::domain_error);

    const LargeScaleLaw empty{0.1, 0.0, 20.0, 20.0};
    REQUIRE_THROWS_AS(eval_A(empty, 20.0), std::domain_error);
}

TEST_CASE("eval_A: strictly increasing for positive slope")
{
    const LargeScaleLaw law{0.31, -9.26, 10.0, 36.0};
    double prev = eval_A(law, 10.0).dbsm;
    for (double f = 10.5; f <= 36.0; f += 0.5) {
        const double cur = eval_A(law, f).dbsm;
        REQUIRE(cur > prev);
        prev = cur;
    }
}

// ================================================================= eval_B1

TEST_CASE("eval_B1: UAV pattern spot values")
{
    const auto& uav = builtin_model("UAV");
    REQUIRE(eval_B1(uav.b1, 0.0) == Catch::Approx(-0.68).margin(1e-12));
    REQUIRE(eval_B1(uav.b1, 90.0) == Catch::Approx(6.52).margin(1e-12));
    // 45 deg: quadratic term is far above the floor, so the floor engages.
    REQUIRE(eval_B1(uav.b1, 45.0) == Catch::Approx(-4.47).margin(1e-12));
}

TEST_CASE("eval_B1: human pattern is identically 0 dB")
{
    const auto& human = builtin_model("Human");
    REQUIRE(human.b1.isotropic());
    for (double phi = -720.0; phi <= 720.0; phi += 7.3)
        REQUIRE(eval_B1(human.b1, phi) == 0.0);
}

TEST_CASE("eval_B1: wrapping invariance, total over any real azimuth")
{
    const auto& uav = builtin_model("UAV");
    for (double phi = -360.0; phi < 360.0; phi += 2.5) {
        REQUIRE(eval_B1(uav.b1, phi) == eval_B1(uav.b1, phi + 360.0));
        REQUIRE(eval_B1(uav.b1, phi) == eval_B1(uav.b1, phi - 720.0));
    }
}

TEST_CASE("eval_B1: floor and ceiling bounds")
{
    for (const auto* label : {"UAV", "Vehicle"}) {
        const auto& m = builtin_model(label);
        double max_peak = -1e9;
        for (const auto& p : m.b1.peaks)
            max_peak = std::max(max_peak, -p.offset_db);
        for (double phi = 0.0; phi < 360.0; phi += 0.25) {
            const double v = eval_B1(m.b1, phi);
            REQUIRE(v >= -m.b1.y_max_db - 1e-12);
            REQUIRE(v <= max_peak + 1e-12);
        }
    }
}

TEST_CASE("eval_B1: peak attainment at the centers")
{
    for (const auto* label : {"UAV", "Vehicle"}) {
        const auto& m = builtin_model(label);
        for (const auto& p : m.b1.peaks)
            REQUIRE(eval_B1(m.b1, p.center_deg) ==
                    Catch::Approx(-std::min(p.offset_db, m.b1.y_max_db)).margin(1e-12));
    }
}

TEST_CASE("BeamPattern validation rejects bad sector layouts")
{
    BeamPattern gap;
    gap.y_max_db = 3.0;
    gap.peaks = {{0.0, 10.0, 0.0, {315.0, 45.0}}, {90.0, 10.0, 0.0, {45.0, 120.0}}};
    REQUIRE_THROWS_AS(gap.validate(), std::domain_error);

    BeamPattern overlap;
    overlap.y_max_db = 3.0;
    overlap.peaks = {{0.0, 10.0, 0.0, {315.0, 90.0}}, {90.0, 10.0, 0.0, {45.0, 135.0}},
                     {200.0, 10.0, 0.0, {135.0, 315.0}}};
    REQUIRE_THROWS_AS(overlap.validate(), std::domain_error);

    BeamPattern neg_width;
    neg_width.y_max_db = 3.0;
    neg_width.peaks = {{0.0, -1.0, 0.0, {0.0, 360.0}}};
    REQUIRE_THROWS_AS(neg_width.validate(), std::domain_error);

    BeamPattern ok = builtin_model("Vehicle").b1;
    REQUIRE_NOTHROW(ok.validate());
}

// ================================================================ sample_B2

TEST_CASE("sample_B2: degenerate law is deterministic")
{
    RandomStream rng(1);
    const auto law = make_lognormal_db(0.0, 0.0);
    for (int i = 0; i < 10; ++i)
        REQUIRE(sample_B2(law, rng) == 1.0);

    const auto law2 = make_lognormal_db(-3.0, 0.0);
    REQUIRE(sample_B2(law2, rng) == Catch::Approx(db_to_linear(-3.0)).margin(1e-15));
}

TEST_CASE("sample_B2: lognormal moments over 1e6 draws")
{
    RandomStream rng(2024);
    const auto law = make_lognormal_db(-0.52, 2.31);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double db = linear_to_db(sample_B2(law, rng));
        sum += db;
        sum2 += db * db;
    }
    const double mean = sum / n;
    const double std = std::sqrt(sum2 / n - mean * mean);
    REQUIRE(mean == Catch::Approx(-0.52).margin(0.01));
    REQUIRE(std == Catch::Approx(2.31).margin(0.01));
}

TEST_CASE("sample_B2: every draw is positive")
{
    RandomStream rng(3);
    const auto law = make_lognormal_db(-3.0, 1.0);
    for (int i = 0; i < 20000; ++i)
        REQUIRE(sample_B2(law, rng) > 0.0);
}

TEST_CASE("sample_B2: missing shape parameters are a configuration error")
{
    RandomStream rng(4);
    FluctuationLaw law;
    law.family = FluctFamily::weibull;
    law.sigma_db = 1.0; // non-degenerate but shape/scale unset
    REQUIRE_THROWS_AS(sample_B2(law, rng), config_error);
}

TEST_CASE("sample_B2: seeded KS test against each configured family")
{
    const std::size_t n = 100000;

    FluctuationLaw lognorm = make_lognormal_db(-0.52, 2.31);
    FluctuationLaw weib;
    weib.family = FluctFamily::weibull;
    weib.shape = 1.7;
    weib.scale = 0.9;
    weib.sigma_db = 1.0; // marks the law as non-degenerate
    FluctuationLaw gam;
    gam.family = FluctFamily::gamma;
    gam.shape = 2.5;
    gam.scale = 0.4;
    gam.sigma_db = 1.0;

    int case_idx = 0;
    for (const auto& law : {lognorm, weib, gam}) {
        RandomStream rng(1000 + case_idx++);
        std::vector<double> draws_db;
        draws_db.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            draws_db.push_back(linear_to_db(sample_B2(law, rng)));
        const double d = testsupport::ks_statistic(
            draws_db, [&](double x) { return fluct_cdf_db(law, x); });
        REQUIRE(d < testsupport::ks_critical_001(n));
    }
}

// =============================================================== eval_sigma

TEST_CASE("eval_sigma: spot values")
{
    const auto& uav = builtin_model("UAV");
    REQUIRE(eval_sigma(uav, 28.0, 0.0).dbsm == Catch::Approx(-1.26).margin(1e-12));

    const auto& vehicle = builtin_model("Vehicle");
    REQUIRE(eval_sigma(vehicle, 10.0, 270.0).dbsm == Catch::Approx(7.45).margin(1e-12));

    const auto& human = builtin_model("Human");
    for (double phi = 0.0; phi < 360.0; phi += 30.0)
        REQUIRE(eval_sigma(human, 20.0, phi).dbsm ==
                Catch::Approx(eval_A(human.a_law, 20.0).dbsm).margin(1e-12));
}

TEST_CASE("eval_sigma: exact dB separability")
{
    RandomStream rng(5);
    const auto& uav = builtin_model("UAV");
    for (int i = 0; i < 200; ++i) {
        const double f = rng.uniform(10.0, 36.0);
        const double phi = rng.uniform(0.0, 360.0);
        const double b2 = sample_B2(uav.b2, rng);
        const double sum = eval_A(uav.a_law, f).dbsm + eval_B1(uav.b1, phi) + linear_to_db(b2);
        REQUIRE(eval_sigma(uav, f, phi, b2).dbsm == Catch::Approx(sum).margin(1e-12));
    }
}

TEST_CASE("eval_sigma: positive linear deterministic part everywhere")
{
    for (const auto& [label, model] : builtin_models()) {
        for (double f : {10.0, 20.0, 36.0})
            for (double phi = 0.0; phi < 360.0; phi += 5.0) {
                const auto s = eval_sigma(model, f, phi);
                REQUIRE(s.linear_m2 > 0.0);
                REQUIRE(std::isfinite(s.linear_m2));
            }
    }
}

TEST_CASE("eval_sigma: rejects nonpositive fluctuation draws")
{
    const auto& uav = builtin_model("UAV");
    REQUIRE_THROWS_AS(eval_sigma(uav, 28.0, 0.0, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(eval_sigma(uav, 28.0, 0.0, -1.0), std::domain_error);
}

// =========================================================== builtin_models

TEST_CASE("builtin_models: Table parameterizations")
{
    const auto& models = builtin_models();
    REQUIRE(models.size() == 3);

    const auto& uav = models.at("UAV");
    REQUIRE(uav.a_law.slope_db_per_ghz == 0.31);
    REQUIRE(uav.a_law.intercept_dbsm == -9.26);
    REQUIRE(uav.a_law.f_min_ghz == 10.0);
    REQUIRE(uav.a_law.f_max_ghz == 36.0);
    REQUIRE(uav.b1.y_max_db == 4.47);
    REQUIRE(uav.b2.mu_db == -0.52);
    REQUIRE(uav.b2.sigma_db == 2.31);

    const auto& vehicle = models.at("Vehicle");
    REQUIRE(vehicle.b1.y_max_db == 7.46);
    bool found_90 = false;
    for (const auto& p : vehicle.b1.peaks) {
        if (p.center_deg == 90.0) {
            found_90 = true;
            REQUIRE(p.halfwidth_3db_deg == 30.42);
            REQUIRE(p.offset_db == -1.67);
        }
    }
    REQUIRE(found_90);
    REQUIRE(vehicle.b2.mu_db == -0.53);
    REQUIRE(vehicle.b2.sigma_db == 2.64);

    const auto& human = models.at("Human");
    REQUIRE(human.b1.isotropic());
    REQUIRE(human.b2.mu_db == -0.77);
    REQUIRE(human.b2.sigma_db == 2.13);
    REQUIRE(human.b2.family == FluctFamily::lognormal);

    REQUIRE_THROWS_AS(builtin_model("Submarine"), config_error);
}
