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
// File-level command cores shared by the CLI and the test suites: model
// evaluation grids, simulation runs with their output files, fitting runs,
// ingest, the canonical-shape table and plot generation.

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcskit/canonical.hpp"
#include "rcskit/csv.hpp"
#include "rcskit/dataset.hpp"
#include "rcskit/errors.hpp"
#include "rcskit/fitting.hpp"
#include "rcskit/measurement.hpp"
#include "rcskit/model_json.hpp"
#include "rcskit/sim.hpp"
#include "rcskit/stats.hpp"
#include "rcskit/svg.hpp"

namespace rcskit {

// ------------------------------------------------------------- model eval

struct EvalOptions {
    double freq_ghz = 28.0;
    double phi_step_deg = 5.0;
    bool b2_seeded = false; // off: B2 = 1; on: one seeded draw per row
    std::uint64_t seed = 1;
};

struct EvalRow {
    double phi_deg;
    double a_db;
    double b1_db;
    double b2_db;
    double sigma_dbsm;
    bool extrapolated;
};

inline std::vector<EvalRow> eval_grid(const UnifiedRcsModel& model, const EvalOptions& opts)
{
    if (!(opts.phi_step_deg > 0.0))
        throw config_error("eval: phi step must be > 0");
    RandomStream rng(opts.seed);
    std::vector<EvalRow> rows;
    for (double phi = 0.0; phi < 360.0 - 1e-9; phi += opts.phi_step_deg) {
        EvalRow row;
        row.phi_deg = phi;
        const AEval a = eval_A(model.a_law, opts.freq_ghz);
        row.a_db = a.dbsm;
        row.extrapolated = a.extrapolated;
        row.b1_db = eval_B1(model.b1, phi);
        const double b2_linear = opts.b2_seeded ? sample_B2(model.b2, rng) : 1.0;
        row.b2_db = linear_to_db(b2_linear);
        row.sigma_dbsm = eval_sigma(model, opts.freq_ghz, phi, b2_linear).dbsm;
        rows.push_back(row);
    }
    return rows;
}

inline void write_eval_csv(const std::vector<EvalRow>& rows, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    out << "phi_deg,a_db,b1_db,b2_db,sigma_dbsm,extrapolated\n";
    for (const auto& r : rows)
        out << format_double(r.phi_deg) << ',' << format_double(r.a_db) << ','
            << format_double(r.b1_db) << ',' << format_double(r.b2_db) << ','
            << format_double(r.sigma_dbsm) << ',' << (r.extrapolated ? 1 : 0) << '\n';
}

/// Resolve "UAV" / "Vehicle" / "Human" or a model JSON path.
inline UnifiedRcsModel load_model_or_builtin(const std::string& spec)
{
    const auto& builtins = builtin_models();
    if (auto it = builtins.find(spec); it != builtins.end())
        return it->second;
    if (std::filesystem::exists(spec))
        return load_model(spec);
    throw config_error("'" + spec + "' is neither a builtin model name nor a model file");
}

// -------------------------------------------------------------- sim config

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j, const std::string& key,
                                         const std::string& path)
{
    if (!j.contains(key))
        throw config_error("sim config: missing key " + path + "/" + key);
    return j.at(key);
}

template <typename T>
T get_checked(const nlohmann::json& j, const std::string& key, const std::string& path, T fallback)
{
    if (!j.contains(key))
        return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw config_error("sim config: bad value at " + path + "/" + key);
    }
}

} // namespace detail

inline SimConfig sim_config_from_json(const nlohmann::json& j)
{
    SimConfig cfg;
    if (!j.is_object())
        throw config_error("sim config: root must be an object");

    if (j.contains("scenario")) {
        const auto& s = j.at("scenario");
        cfg.scenario.cell_radius_m =
            detail::get_checked(s, "cell_radius_m", "/scenario", cfg.scenario.cell_radius_m);
        cfg.scenario.bs_height_m =
            detail::get_checked(s, "bs_height_m", "/scenario", cfg.scenario.bs_height_m);
        cfg.scenario.target_height_m =
            detail::get_checked(s, "target_height_m", "/scenario", cfg.scenario.target_height_m);
        cfg.scenario.min_range_m =
            detail::get_checked(s, "min_range_m", "/scenario", cfg.scenario.min_range_m);
        if (s.contains("bs_position")) {
            const auto& p = s.at("bs_position");
            if (!p.is_array() || p.size() != 2)
                throw config_error("sim config: bad value at /scenario/bs_position");
            cfg.scenario.bs_position_m = {p.at(0).get<double>(), p.at(1).get<double>()};
        }
    }
    cfg.carrier_freq_ghz = detail::get_checked(j, "carrier_freq", "", cfg.carrier_freq_ghz);
    cfg.target_label = detail::get_checked<std::string>(j, "target_label", "", cfg.target_label);
    cfg.drops = detail::get_checked(j, "drops", "", cfg.drops);
    cfg.seed = detail::get_checked<std::uint64_t>(j, "seed", "", cfg.seed);
    cfg.workers = detail::get_checked(j, "workers", "", cfg.workers);

    if (j.contains("cluster_cfg")) {
        const auto& c = j.at("cluster_cfg");
        cfg.cluster.n1 = detail::get_checked(c, "n1", "/cluster_cfg", cfg.cluster.n1);
        cfg.cluster.n2 = detail::get_checked(c, "n2", "/cluster_cfg", cfg.cluster.n2);
        cfg.cluster.delay_scale_tx_s =
            detail::get_checked(c, "delay_scale_tx", "/cluster_cfg", cfg.cluster.delay_scale_tx_s);
        cfg.cluster.delay_scale_rx_s =
            detail::get_checked(c, "delay_scale_rx", "/cluster_cfg", cfg.cluster.delay_scale_rx_s);
        cfg.cluster.angle_std_tx_deg =
            detail::get_checked(c, "angle_std_tx", "/cluster_cfg", cfg.cluster.angle_std_tx_deg);
        cfg.cluster.angle_std_rx_deg =
            detail::get_checked(c, "angle_std_rx", "/cluster_cfg", cfg.cluster.angle_std_rx_deg);
        cfg.cluster.power_decay_db =
            detail::get_checked(c, "power_decay", "/cluster_cfg", cfg.cluster.power_decay_db);
        cfg.cluster.specular_k_db =
            detail::get_checked(c, "specular_k", "/cluster_cfg", cfg.cluster.specular_k_db);
    }

    const std::string mode = detail::get_checked<std::string>(j, "mode", "", "monostatic");
    if (mode == "monostatic") {
        cfg.mode = SenseMode::monostatic;
    } else if (mode == "bistatic") {
        cfg.mode = SenseMode::bistatic;
        const auto& p = detail::require_key(j, "rx_position", "");
        if (!p.is_array() || p.size() != 2)
            throw config_error("sim config: bad value at /rx_position");
        cfg.rx_position_m = {p.at(0).get<double>(), p.at(1).get<double>()};
    } else {
        throw config_error("sim config: bad value at /mode (want monostatic|bistatic)");
    }

    if (j.contains("background")) {
        const auto& b = j.at("background");
        cfg.background.enabled =
            detail::get_checked(b, "enabled", "/background", cfg.background.enabled);
        cfg.background.power_offset_db = detail::get_checked(b, "power_offset_dB", "/background",
                                                             cfg.background.power_offset_db);
    }

    cfg.validate();
    return cfg;
}

inline nlohmann::json sim_config_to_json(const SimConfig& cfg)
{
    nlohmann::json j;
    j["scenario"] = {{"cell_radius_m", cfg.scenario.cell_radius_m},
                     {"bs_position", {cfg.scenario.bs_position_m[0], cfg.scenario.bs_position_m[1]}},
                     {"bs_height_m", cfg.scenario.bs_height_m},
                     {"target_height_m", cfg.scenario.target_height_m},
                     {"min_range_m", cfg.scenario.min_range_m}};
    j["carrier_freq"] = cfg.carrier_freq_ghz;
    j["target_label"] = cfg.target_label;
    j["drops"] = cfg.drops;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    j["cluster_cfg"] = {{"n1", cfg.cluster.n1},
                        {"n2", cfg.cluster.n2},
                        {"delay_scale_tx", cfg.cluster.delay_scale_tx_s},
                        {"delay_scale_rx", cfg.cluster.delay_scale_rx_s},
                        {"angle_std_tx", cfg.cluster.angle_std_tx_deg},
                        {"angle_std_rx", cfg.cluster.angle_std_rx_deg},
                        {"power_decay", cfg.cluster.power_decay_db},
                        {"specular_k", cfg.cluster.specular_k_db}};
    j["mode"] = cfg.mode == SenseMode::monostatic ? "monostatic" : "bistatic";
    if (cfg.mode == SenseMode::bistatic)
        j["rx_position"] = {cfg.rx_position_m[0], cfg.rx_position_m[1]};
    j["background"] = {{"enabled", cfg.background.enabled},
                       {"power_offset_dB", cfg.background.power_offset_db}};
    return j;
}

// --------------------------------------------------------------- simulate

namespace detail {

inline nlohmann::json summary_to_json(const MetricSummary& s)
{
    return {{"mean", s.mean},   {"median", s.median}, {"p05", s.p05},
            {"p25", s.p25},     {"p75", s.p75},       {"p95", s.p95}};
}

inline void write_cdf_csv(const std::string& path, std::span<const double> values)
{
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    out << "value,cdf\n";
    for (const auto& [v, p] : empirical_cdf(values))
        out << format_double(v) << ',' << format_double(p) << '\n';
}

} // namespace detail

/// Run the simulation and emit drops.csv, cdf_<metric>.csv and summary.json
/// into out_dir.
inline SimResult run_simulation_to_files(const SimConfig& cfg, const std::string& out_dir)
{
    std::filesystem::create_directories(out_dir);
    const SimResult res = run_monte_carlo(cfg);

    const auto dir = std::filesystem::path(out_dir);
    {
        std::ofstream out(dir / "drops.csv");
        if (!out)
            throw format_error("cannot write drops.csv in '" + out_dir + "'");
        out << "drop,path_loss_db,delay_spread_s,angle_spread_deg,r1_m,r2_m\n";
        for (std::size_t i = 0; i < res.drops.size(); ++i) {
            const auto& d = res.drops[i];
            out << i << ',' << format_double(d.path_loss_db) << ','
                << format_double(d.rms_delay_spread_s) << ','
                << format_double(d.azimuth_angle_spread_deg) << ',' << format_double(d.r1_m)
                << ',' << format_double(d.r2_m) << '\n';
        }
    }

    std::vector<double> pl, ds, as;
    for (const auto& d : res.drops) {
        pl.push_back(d.path_loss_db);
        ds.push_back(d.rms_delay_spread_s);
        as.push_back(d.azimuth_angle_spread_deg);
    }
    detail::write_cdf_csv((dir / "cdf_path_loss.csv").string(), pl);
    detail::write_cdf_csv((dir / "cdf_delay_spread.csv").string(), ds);
    detail::write_cdf_csv((dir / "cdf_angle_spread.csv").string(), as);

    nlohmann::json summary;
    summary["config"] = sim_config_to_json(cfg);
    summary["path_loss_db"] = detail::summary_to_json(res.path_loss_db);
    summary["delay_spread_s"] = detail::summary_to_json(res.delay_spread_s);
    summary["angle_spread_deg"] = detail::summary_to_json(res.angle_spread_deg);
    std::ofstream out(dir / "summary.json");
    if (!out)
        throw format_error("cannot write summary.json in '" + out_dir + "'");
    out << summary.dump(2) << "\n";
    return res;
}

// -------------------------------------------------------------------- fit

/// Fit a dataset file and write the report JSON ({"model": ..,
/// "diagnostics": ..}); optionally dump residuals as CSV.
inline FitReport fit_dataset_to_files(const std::string& dataset_csv, const FitOptions& opts,
                                      const std::string& out_json,
                                      const std::optional<std::string>& residuals_csv = {})
{
    const MeasuredRcsDataset ds = read_dataset_csv(dataset_csv);
    const FitReport report = fit_full_model(ds, opts);

    nlohmann::json j;
    j["model"] = to_json(report.model);
    j["diagnostics"] = fit_report_to_json(report);
    std::ofstream out(out_json);
    if (!out)
        throw format_error("cannot write '" + out_json + "'");
    out << j.dump(2) << "\n";

    if (residuals_csv) {
        std::ofstream rout(*residuals_csv);
        if (!rout)
            throw format_error("cannot write '" + *residuals_csv + "'");
        rout << "residual_db\n";
        for (double r : report.residuals_db)
            rout << format_double(r) << '\n';
    }
    return report;
}

// ------------------------------------------------------------- calibration

/// Calibration file: either {"offset_db": x} directly, or
/// {"sphere_radius_m": r, "measured_dbsm": [..]} to derive the offset from a
/// sphere measurement.
inline CalibrationResult load_calibration(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw format_error("cannot read calibration file '" + path + "'");
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw format_error("calibration file '" + path + "': invalid JSON");
    if (j.contains("offset_db")) {
        const double off = j.at("offset_db").get<double>();
        return {off, std::abs(off), std::abs(off) <= 2.0, 0.0, 0.0};
    }
    if (j.contains("sphere_radius_m") && j.contains("measured_dbsm")) {
        const std::vector<double> measured = j.at("measured_dbsm").get<std::vector<double>>();
        return calibrate_with_sphere(measured, j.at("sphere_radius_m").get<double>());
    }
    throw format_error("calibration file '" + path +
                       "': want offset_db or sphere_radius_m + measured_dbsm");
}

// --------------------------------------------------------- canonical table

struct CanonicalRow {
    std::string shape;
    std::string params;
    double freq_ghz;
    double theta_deg;
    double rcs_m2;
    double rcs_dbsm; // -inf encodes a null (zero linear RCS)
};

inline std::vector<CanonicalRow> canonical_table(const std::vector<std::string>& shapes,
                                                 const std::vector<double>& freqs_ghz)
{
    std::vector<CanonicalRow> rows;
    auto add = [&rows](const std::string& shape, const std::string& params, double f,
                       double theta_deg, double rcs_m2) {
        // Values at the floating-point noise floor (e.g. cos^2 at grazing
        // incidence) are reported as the below-scale sentinel.
        rows.push_back({shape, params, f, theta_deg, rcs_m2,
                        rcs_m2 > 1e-30 ? linear_to_db(rcs_m2)
                                       : -std::numeric_limits<double>::infinity()});
    };
    for (const auto& shape : shapes) {
        for (double f : freqs_ghz) {
            const double lambda = wavelength_m(f);
            if (shape == "sphere") {
                add("sphere", "a=0.25", f, 0.0, sphere_rcs(0.25));
            } else if (shape == "plate") {
                add("plate", "a=b=0.1", f, 0.0, plate_rcs(0.1, 0.1, lambda, 0.0));
                add("plate", "a=b=0.1", f, 90.0, plate_rcs(0.1, 0.1, lambda, pi / 2.0));
            } else if (shape == "ellipsoid") {
                add("ellipsoid", "a=0.2 b=0.1", f, 0.0, ellipsoid_rcs(0.2, 0.1, lambda, 0.0));
                add("ellipsoid", "a=0.2 b=0.1", f, 90.0,
                    ellipsoid_rcs(0.2, 0.1, lambda, pi / 2.0));
            } else if (shape == "cone") {
                add("cone", "a=0.1 alpha=15deg", f, 15.0,
                    cone_rcs(0.1, lambda, deg_to_rad(15.0), deg_to_rad(15.0)));
                add("cone", "a=0.1 alpha=15deg", f, 45.0,
                    cone_rcs(0.1, lambda, deg_to_rad(45.0), deg_to_rad(15.0)));
            } else if (shape == "trihedral") {
                add("trihedral", "a=h=b=0.15", f, 0.0,
                    trihedral_rcs(0.15, 0.15, 0.15, lambda, 0.0));
            } else {
                throw config_error("unknown canonical shape '" + shape + "'");
            }
        }
    }
    return rows;
}

inline void write_canonical_csv(const std::vector<CanonicalRow>& rows, std::ostream& out)
{
    out << "shape,params,freq_ghz,theta_deg,rcs_m2,rcs_dbsm\n";
    for (const auto& r : rows) {
        out << r.shape << ',' << r.params << ',' << format_double(r.freq_ghz) << ','
            << format_double(r.theta_deg) << ',' << format_double(r.rcs_m2) << ',';
        if (std::isinf(r.rcs_dbsm))
            out << "null";
        else
            out << format_double(r.rcs_dbsm);
        out << '\n';
    }
}

// ------------------------------------------------------------------ report

/// Render SVG plots from a run directory: CDF curves for simulate outputs,
/// polar beam patterns for fit outputs. Returns the number of files written.
inline int report_from_dir(const std::string& run_dir, const std::string& out_dir)
{
    if (!std::filesystem::is_directory(run_dir))
        throw format_error("'" + run_dir + "' is not a directory");
    std::filesystem::create_directories(out_dir);
    int written = 0;

    const struct {
        const char* csv;
        const char* svg;
        const char* title;
        const char* x_label;
    } cdf_specs[] = {
        {"cdf_path_loss.csv", "cdf_path_loss.svg", "Path loss CDF", "path loss [dB]"},
        {"cdf_delay_spread.csv", "cdf_delay_spread.svg", "RMS delay spread CDF",
         "delay spread [s]"},
        {"cdf_angle_spread.csv", "cdf_angle_spread.svg", "Azimuth angle spread CDF",
         "angle spread [deg]"},
    };
    for (const auto& spec : cdf_specs) {
        const auto csv_path = std::filesystem::path(run_dir) / spec.csv;
        if (!std::filesystem::exists(csv_path))
            continue;
        const CsvTable table = read_csv(csv_path.string());
        PlotSeries series;
        series.name = "empirical";
        for (std::size_t i = 0; i < table.rows.size(); ++i)
            series.points.emplace_back(
                parse_double_field(table.rows[i][0], spec.csv),
                parse_double_field(table.rows[i][1], spec.csv));
        write_line_plot_svg((std::filesystem::path(out_dir) / spec.svg).string(), spec.title,
                            spec.x_label, "P(value <= x)", {series});
        ++written;
    }

    // Any JSON file carrying a "model" object gets a polar pattern plot.
    for (const auto& entry : std::filesystem::directory_iterator(run_dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json")
            continue;
        std::ifstream in(entry.path());
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded())
            continue;
        const nlohmann::json* model_j = nullptr;
        if (j.contains("model"))
            model_j = &j.at("model");
        else if (j.contains("b1") && j.contains("a_law"))
            model_j = &j;
        if (!model_j)
            continue;
        UnifiedRcsModel model;
        try {
            model = model_from_json(*model_j);
        } catch (const format_error&) {
            continue;
        }
        std::vector<std::pair<double, double>> pts;
        for (double phi = 0.0; phi <= 360.0; phi += 1.0)
            pts.emplace_back(phi, eval_B1(model.b1, phi));
        const std::string label = model.target_label.empty() ? entry.path().stem().string()
                                                             : model.target_label;
        write_polar_plot_svg((std::filesystem::path(out_dir) / ("b1_" + label + ".svg")).string(),
                             "B1 pattern: " + label, pts);
        ++written;
    }

    if (written == 0)
        throw format_error("no simulate or fit outputs found in '" + run_dir + "'");
    return written;
}

} // namespace rcskit
