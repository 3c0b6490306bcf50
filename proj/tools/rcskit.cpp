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
// Command-line front end. Exit codes: 0 success, 2 input/format error,
// 3 numerical/fit error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcskit/workflows.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 2;
constexpr int exit_numeric_error = 3;

void print_resolved(const std::string& command, const nlohmann::json& resolved)
{
    std::cout << "rcskit " << command << " config: " << resolved.dump() << "\n";
}

int cmd_ingest(const std::vector<std::string>& dirs, rcskit::IngestOptions opts,
               const std::optional<std::string>& calibration_file, const std::string& out_csv)
{
    if (calibration_file) {
        const auto cal = rcskit::load_calibration(*calibration_file);
        opts.calibration_offset_db = cal.offset_db;
        if (!cal.within_bound)
            std::cerr << "warning: calibration discrepancy " << cal.discrepancy_db
                      << " dB exceeds the 2 dB bound\n";
    }
    print_resolved("ingest", {{"dirs", dirs},
                              {"gate_half_width_s", opts.gate_half_width_s},
                              {"gate_taper_fraction", opts.gate_taper_fraction},
                              {"calibration_offset_db", opts.calibration_offset_db},
                              {"noise_floor_db", opts.noise_floor_db},
                              {"angle_step_deg", opts.angle_step_deg}});
    const auto result = rcskit::ingest_dataset(dirs, opts);
    for (const auto& w : result.warnings)
        std::cerr << "warning: " << w << "\n";
    rcskit::write_dataset_csv(result.dataset, out_csv);
    std::cout << "wrote " << result.dataset.samples.size() << " samples to " << out_csv << "\n";
    return exit_ok;
}

int cmd_fit(const std::string& dataset_csv, const rcskit::FitOptions& opts,
            const std::string& out_json, const std::optional<std::string>& residuals_csv)
{
    print_resolved("fit", {{"dataset", dataset_csv},
                           {"bins", opts.kl_bins},
                           {"renormalize", opts.renormalize_pattern},
                           {"centers", opts.beam.peak_centers_deg}});
    const auto report = rcskit::fit_dataset_to_files(dataset_csv, opts, out_json, residuals_csv);

    const auto& m = report.model;
    std::cout << "target: " << (m.target_label.empty() ? "(unlabeled)" : m.target_label) << "\n";
    std::cout << "  A(f) = " << m.a_law.slope_db_per_ghz << " * f + " << m.a_law.intercept_dbsm
              << "  [dBsm, f in GHz, valid " << m.a_law.f_min_ghz << ".." << m.a_law.f_max_ghz
              << "]\n";
    if (m.b1.isotropic()) {
        std::cout << "  B1: isotropic (0 dB)\n";
    } else {
        for (const auto& p : m.b1.peaks)
            std::cout << "  B1 peak at " << p.center_deg << " deg: phi_3dB = "
                      << p.halfwidth_3db_deg << " deg, c = " << p.offset_db << " dB\n";
        std::cout << "  B1 floor Y_max = " << m.b1.y_max_db << " dB\n";
    }
    std::cout << "  B2: " << rcskit::to_string(m.b2.family) << " (mu = " << m.b2.mu_db
              << " dB, sigma = " << m.b2.sigma_db << " dB)\n";
    std::cout << "  fit RMSE(B1) = " << report.rmse_b1_db << " dB; KL:";
    for (const auto& [fam, kl] : report.kl_by_family)
        std::cout << " " << rcskit::to_string(fam) << "=" << kl;
    std::cout << "; chosen " << rcskit::to_string(report.chosen_family) << "\n";
    std::cout << "wrote " << out_json << "\n";
    return exit_ok;
}

int cmd_eval(const std::string& model_spec, const rcskit::EvalOptions& opts,
             const std::string& out_csv)
{
    print_resolved("eval", {{"model", model_spec},
                            {"freq_ghz", opts.freq_ghz},
                            {"phi_step_deg", opts.phi_step_deg},
                            {"b2", opts.b2_seeded ? "seeded" : "off"},
                            {"seed", opts.seed}});
    const auto model = rcskit::load_model_or_builtin(model_spec);
    const auto rows = rcskit::eval_grid(model, opts);
    rcskit::write_eval_csv(rows, out_csv);
    int extrapolated = 0;
    for (const auto& r : rows)
        extrapolated += r.extrapolated ? 1 : 0;
    if (extrapolated > 0)
        std::cerr << "warning: " << opts.freq_ghz << " GHz is outside the model's valid range ["
                  << model.a_law.f_min_ghz << ", " << model.a_law.f_max_ghz
                  << "]; rows flagged\n";
    std::cout << "wrote " << rows.size() << " rows to " << out_csv << "\n";
    return exit_ok;
}

int cmd_simulate(const std::string& config_file, std::optional<std::uint64_t> seed,
                 std::optional<int> drops, const std::string& out_dir)
{
    std::ifstream in(config_file);
    if (!in)
        throw rcskit::format_error("cannot read config '" + config_file + "'");
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw rcskit::format_error("config '" + config_file + "': invalid JSON");
    rcskit::SimConfig cfg = rcskit::sim_config_from_json(j);
    if (seed)
        cfg.seed = *seed;
    if (drops)
        cfg.drops = *drops;
    cfg.validate();
    print_resolved("simulate", rcskit::sim_config_to_json(cfg));

    const auto res = rcskit::run_simulation_to_files(cfg, out_dir);
    std::cout << "drops: " << res.drops.size() << "\n";
    std::cout << "median path loss:    " << res.path_loss_db.median << " dB\n";
    std::cout << "median delay spread: " << res.delay_spread_s.median * 1e9 << " ns\n";
    std::cout << "median angle spread: " << res.angle_spread_deg.median << " deg\n";
    std::cout << "outputs in " << out_dir << "\n";
    return exit_ok;
}

int cmd_validate_canonical(const std::string& shapes_arg, const std::vector<double>& freqs,
                           const std::optional<std::string>& out_csv)
{
    std::vector<std::string> shapes;
    if (shapes_arg == "all") {
        shapes = {"sphere", "plate", "ellipsoid", "cone", "trihedral"};
    } else {
        std::stringstream ss(shapes_arg);
        std::string item;
        while (std::getline(ss, item, ','))
            shapes.push_back(item);
    }
    print_resolved("validate-canonical", {{"shapes", shapes}, {"freqs_ghz", freqs}});
    const auto rows = rcskit::canonical_table(shapes, freqs);
    if (out_csv) {
        std::ofstream out(*out_csv);
        if (!out)
            throw rcskit::format_error("cannot write '" + *out_csv + "'");
        rcskit::write_canonical_csv(rows, out);
        std::cout << "wrote " << rows.size() << " rows to " << *out_csv << "\n";
    } else {
        rcskit::write_canonical_csv(rows, std::cout);
    }
    return exit_ok;
}

int cmd_report(const std::string& run_dir, const std::string& out_dir)
{
    print_resolved("report", {{"run_dir", run_dir}, {"out_dir", out_dir}});
    const int n = rcskit::report_from_dir(run_dir, out_dir);
    std::cout << "wrote " << n << " SVG file(s) to " << out_dir << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"unified RCS models, measurement post-processing and sensing-channel simulation"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "process S21 sweep directories into an RCS dataset");
    std::vector<std::string> ingest_dirs;
    rcskit::IngestOptions ingest_opts;
    std::optional<std::string> calibration_file;
    std::string ingest_out = "dataset.csv";
    double gate_center_ns = -1.0, gate_half_width_ns = 5.0;
    std::string gate_window = "raised-cosine";
    ingest->add_option("--in", ingest_dirs, "sweep directory (repeatable)")->required();
    ingest->add_option("--out", ingest_out, "output dataset CSV");
    ingest->add_option("--target", ingest_opts.target_label, "target label for the dataset");
    ingest->add_option("--gate-center-ns", gate_center_ns,
                       "gate center delay in ns (default: round-trip delay from metadata)");
    ingest->add_option("--gate-half-width-ns", gate_half_width_ns, "gate half width in ns");
    ingest->add_option("--gate-window", gate_window, "rectangular | raised-cosine")
        ->check(CLI::IsMember({"rectangular", "raised-cosine"}));
    ingest->add_option("--gate-taper", ingest_opts.gate_taper_fraction,
                       "raised-cosine taper fraction of the gate");
    ingest->add_option("--freq-taper", ingest_opts.freq_taper_fraction,
                       "frequency-domain taper fraction (default off)");
    ingest->add_option("--noise-floor-db", ingest_opts.noise_floor_db,
                       "echo powers below this are reported as below noise floor");
    ingest->add_option("--angle-step", ingest_opts.angle_step_deg, "expected azimuth step in deg");
    ingest->add_option("--calibration", calibration_file, "calibration JSON file");

    // fit
    auto* fit = app.add_subcommand("fit", "fit the unified model to a dataset CSV");
    std::string fit_dataset, fit_out = "fit_report.json";
    std::optional<std::string> fit_residuals;
    rcskit::FitOptions fit_opts;
    std::string centers_arg;
    fit->add_option("dataset", fit_dataset, "dataset CSV")->required();
    fit->add_option("--out", fit_out, "output report JSON");
    fit->add_option("--bins", fit_opts.kl_bins, "KL histogram bin count");
    fit->add_flag("--renormalize", fit_opts.renormalize_pattern,
                  "rescale B1 to unit angular mean, folding the correction into A");
    fit->add_option("--centers", centers_arg, "comma-separated peak centers in deg");
    fit->add_option("--residuals", fit_residuals, "optional residual dump CSV");

    // eval
    auto* eval = app.add_subcommand("eval", "tabulate sigma(f, phi) for a model");
    std::string eval_model = "UAV", eval_out = "eval.csv", eval_b2 = "off";
    rcskit::EvalOptions eval_opts;
    eval->add_option("--model", eval_model, "builtin name (UAV|Vehicle|Human) or model JSON path");
    eval->add_option("--freq", eval_opts.freq_ghz, "frequency in GHz")->required();
    eval->add_option("--phi-grid", eval_opts.phi_step_deg, "azimuth grid step in deg");
    eval->add_option("--b2", eval_b2, "off | seeded")->check(CLI::IsMember({"off", "seeded"}));
    eval->add_option("--seed", eval_opts.seed, "seed for --b2 seeded");
    eval->add_option("--out", eval_out, "output CSV");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo channel simulation");
    std::string sim_config, sim_out = "sim_out";
    std::optional<std::uint64_t> sim_seed;
    std::optional<int> sim_drops;
    simulate->add_option("config", sim_config, "simulation config JSON")->required();
    simulate->add_option("--seed", sim_seed, "override config seed");
    simulate->add_option("--drops", sim_drops, "override config drop count");
    simulate->add_option("--out", sim_out, "output directory");

    // validate-canonical
    auto* canon = app.add_subcommand("validate-canonical", "tabulate canonical-shape RCS oracles");
    std::string canon_shapes = "all";
    std::vector<double> canon_freqs{10.0, 15.0, 20.0, 28.0, 36.0};
    std::optional<std::string> canon_out;
    canon->add_option("--shapes", canon_shapes, "all or comma-separated shape names");
    canon->add_option("--freqs", canon_freqs, "frequencies in GHz");
    canon->add_option("--out", canon_out, "output CSV (default: stdout)");

    // report
    auto* report = app.add_subcommand("report", "render SVG plots from run outputs");
    std::string report_dir, report_out = "plots";
    report->add_option("run_dir", report_dir, "directory with simulate/fit outputs")->required();
    report->add_option("--out", report_out, "output directory for SVG files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_input_error;
    }

    try {
        if (ingest->parsed()) {
            if (gate_center_ns >= 0.0)
                ingest_opts.gate_center_s = gate_center_ns * 1e-9;
            ingest_opts.gate_half_width_s = gate_half_width_ns * 1e-9;
            ingest_opts.gate_window = gate_window == "rectangular"
                                          ? rcskit::GateWindow::rectangular
                                          : rcskit::GateWindow::raised_cosine;
            return cmd_ingest(ingest_dirs, ingest_opts, calibration_file, ingest_out);
        }
        if (fit->parsed()) {
            if (!centers_arg.empty()) {
                fit_opts.beam.peak_centers_deg.clear();
                std::stringstream ss(centers_arg);
                std::string item;
                while (std::getline(ss, item, ','))
                    fit_opts.beam.peak_centers_deg.push_back(std::stod(item));
            }
            return cmd_fit(fit_dataset, fit_opts, fit_out, fit_residuals);
        }
        if (eval->parsed()) {
            eval_opts.b2_seeded = eval_b2 == "seeded";
            return cmd_eval(eval_model, eval_opts, eval_out);
        }
        if (simulate->parsed())
            return cmd_simulate(sim_config, sim_seed, sim_drops, sim_out);
        if (canon->parsed())
            return cmd_validate_canonical(canon_shapes, canon_freqs, canon_out);
        if (report->parsed())
            return cmd_report(report_dir, report_out);
    } catch (const rcskit::fit_error& e) {
        std::cerr << "fit error: " << e.what() << "\n";
        return exit_numeric_error;
    } catch (const rcskit::format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const rcskit::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}
