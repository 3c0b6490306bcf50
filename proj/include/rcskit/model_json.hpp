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
// JSON serialization of UnifiedRcsModel. The text form round-trips every
// finite double bit-exactly (shortest-representation number printing).

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "rcskit/errors.hpp"
#include "rcskit/model.hpp"

namespace rcskit {

inline nlohmann::json to_json(const UnifiedRcsModel& model)
{
    nlohmann::json j;
    j["target_label"] = model.target_label;
    j["a_law"] = {{"slope", model.a_law.slope_db_per_ghz},
                  {"intercept", model.a_law.intercept_dbsm},
                  {"f_min", model.a_law.f_min_ghz},
                  {"f_max", model.a_law.f_max_ghz}};
    nlohmann::json peaks = nlohmann::json::array();
    for (const auto& p : model.b1.peaks) {
        peaks.push_back({{"center_deg", p.center_deg},
                         {"halfwidth_3db_deg", p.halfwidth_3db_deg},
                         {"offset_db", p.offset_db},
                         {"sector", {p.sector.lo_deg, p.sector.hi_deg}}});
    }
    j["b1"] = {{"isotropic", model.b1.isotropic()},
               {"y_max", model.b1.y_max_db},
               {"peaks", std::move(peaks)}};
    j["b2"] = {{"family", to_string(model.b2.family)},
               {"mu_db", model.b2.mu_db},
               {"sigma_db", model.b2.sigma_db}};
    if (model.b2.family != FluctFamily::lognormal) {
        j["b2"]["shape"] = model.b2.shape;
        j["b2"]["scale"] = model.b2.scale;
    }
    j["heading_convention"] = model.heading_convention;
    return j;
}

inline UnifiedRcsModel model_from_json(const nlohmann::json& j)
{
    try {
        UnifiedRcsModel m;
        m.target_label = j.at("target_label").get<std::string>();
        const auto& a = j.at("a_law");
        m.a_law = {a.at("slope").get<double>(), a.at("intercept").get<double>(),
                   a.at("f_min").get<double>(), a.at("f_max").get<double>()};
        const auto& b1 = j.at("b1");
        m.b1.y_max_db = b1.at("y_max").get<double>();
        for (const auto& p : b1.at("peaks")) {
            BeamPeak peak;
            peak.center_deg = p.at("center_deg").get<double>();
            peak.halfwidth_3db_deg = p.at("halfwidth_3db_deg").get<double>();
            peak.offset_db = p.at("offset_db").get<double>();
            peak.sector = {p.at("sector").at(0).get<double>(), p.at("sector").at(1).get<double>()};
            m.b1.peaks.push_back(peak);
        }
        if (b1.at("isotropic").get<bool>() != m.b1.isotropic())
            throw format_error("model JSON: isotropic flag inconsistent with peak list");
        const auto& b2 = j.at("b2");
        m.b2.family = fluct_family_from_string(b2.at("family").get<std::string>());
        m.b2.mu_db = b2.at("mu_db").get<double>();
        m.b2.sigma_db = b2.at("sigma_db").get<double>();
        if (b2.contains("shape"))
            m.b2.shape = b2.at("shape").get<double>();
        if (b2.contains("scale"))
            m.b2.scale = b2.at("scale").get<double>();
        if (j.contains("heading_convention"))
            m.heading_convention = j.at("heading_convention").get<std::string>();
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("model JSON: ") + e.what());
    }
}

inline void save_model(const UnifiedRcsModel& model, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write model file '" + path + "'");
    out << to_json(model).dump(2) << "\n";
}

inline UnifiedRcsModel load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot read model file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw format_error("model file '" + path + "': " + e.what());
    }
    return model_from_json(j);
}

} // namespace rcskit
