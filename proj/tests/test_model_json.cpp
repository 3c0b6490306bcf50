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

#include <cstdio>
#include <filesystem>
#include <numbers>

#include "rcskit/model_json.hpp"

using namespace rcskit;

namespace {

void require_models_identical(const UnifiedRcsModel& a, const UnifiedRcsModel& b)
{
    REQUIRE(a.target_label == b.target_label);
    REQUIRE(a.a_law.slope_db_per_ghz == b.a_law.slope_db_per_ghz);
    REQUIRE(a.a_law.intercept_dbsm == b.a_law.intercept_dbsm);
    REQUIRE(a.a_law.f_min_ghz == b.a_law.f_min_ghz);
    REQUIRE(a.a_law.f_max_ghz == b.a_law.f_max_ghz);
    REQUIRE(a.b1.y_max_db == b.b1.y_max_db);
    REQUIRE(a.b1.peaks.size() == b.b1.peaks.size());
    for (std::size_t i = 0; i < a.b1.peaks.size(); ++i) {
        REQUIRE(a.b1.peaks[i].center_deg == b.b1.peaks[i].center_deg);
        REQUIRE(a.b1.peaks[i].halfwidth_3db_deg == b.b1.peaks[i].halfwidth_3db_deg);
        REQUIRE(a.b1.peaks[i].offset_db == b.b1.peaks[i].offset_db);
        REQUIRE(a.b1.peaks[i].sector.lo_deg == b.b1.peaks[i].sector.lo_deg);
        REQUIRE(a.b1.peaks[i].sector.hi_deg == b.b1.peaks[i].sector.hi_deg);
    }
    REQUIRE(a.b2.family == b.b2.family);
    REQUIRE(a.b2.mu_db == b.b2.mu_db);
    REQUIRE(a.b2.sigma_db == b.b2.sigma_db);
}

} // namespace

TEST_CASE("model JSON: builtin models survive a text round trip bit-exactly")
{
    for (const auto& [label, model] : builtin_models()) {
        const std::string text = to_json(model).dump();
        const UnifiedRcsModel back = model_from_json(nlohmann::json::parse(text));
        require_models_identical(model, back);
    }
}

TEST_CASE("model JSON: awkward doubles survive the text round trip")
{
    UnifiedRcsModel m = builtin_model("UAV");
    m.a_law.slope_db_per_ghz = std::numbers::pi;
    m.a_law.intercept_dbsm = -0.1;
    m.a_law.f_min_ghz = 1.0 / 3.0;
    m.a_law.f_max_ghz = 1e200;
    m.b1.peaks[0].halfwidth_3db_deg = 2.2250738585072014e-308; // smallest normal
    m.b2.mu_db = -1e-300;
    m.b2.sigma_db = 0.30000000000000004;

    const std::string text = to_json(m).dump();
    const UnifiedRcsModel back = model_from_json(nlohmann::json::parse(text));
    require_models_identical(m, back);
}

TEST_CASE("model JSON: non-lognormal laws carry shape and scale")
{
    UnifiedRcsModel m = builtin_model("Human");
    m.b2.family = FluctFamily::weibull;
    m.b2.shape = 1.75;
    m.b2.scale = 0.875;
    m.b2.sigma_db = 1.0;
    const auto j = to_json(m);
    REQUIRE(j["b2"]["family"] == "weibull");
    REQUIRE(j["b2"]["shape"] == 1.75);
    const UnifiedRcsModel back = model_from_json(j);
    REQUIRE(back.b2.shape == 1.75);
    REQUIRE(back.b2.scale == 0.875);
}

TEST_CASE("model JSON: schema violations raise format errors")
{
    auto j = to_json(builtin_model("UAV"));
    j.erase("a_law");
    REQUIRE_THROWS_AS(model_from_json(j), format_error);

    auto j2 = to_json(builtin_model("UAV"));
    j2["b1"]["isotropic"] = true; // contradicts the four-peak list
    REQUIRE_THROWS_AS(model_from_json(j2), format_error);

    auto j3 = to_json(builtin_model("Human"));
    j3["b2"]["family"] = "cauchy";
    REQUIRE_THROWS_AS(model_from_json(j3), config_error);
}

TEST_CASE("model JSON: file save and load")
{
    const auto path = std::filesystem::temp_directory_path() / "rcskit_model_roundtrip.json";
    save_model(builtin_model("Vehicle"), path.string());
    const UnifiedRcsModel back = load_model(path.string());
    require_models_identical(builtin_model("Vehicle"), back);
    std::filesystem::remove(path);

    REQUIRE_THROWS_AS(load_model("/nonexistent/model.json"), format_error);
}
