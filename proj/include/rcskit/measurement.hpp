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
// Frequency-domain S21 sweeps to per-angle RCS: inverse transform, power
// delay profile, time gating, echo power, radar-equation inversion, and
// metal-sphere calibration. Per-sweep processing is independent, so sweeps
// may be handled in parallel; dataset assembly is order-independent.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcskit/canonical.hpp"
#include "rcskit/csv.hpp"
#include "rcskit/dataset.hpp"
#include "rcskit/errors.hpp"
#include "rcskit/units.hpp"

namespace rcskit {

// ------------------------------------------------------------------- types

struct SweepMeta {
    double tx_gain_dbi = 0.0;
    double rx_gain_dbi = 0.0;
    double r1_m = 1.0;
    double r2_m = 1.0;
    double center_freq_hz = 0.0;
};

/// One frequency sweep of complex transmission coefficients at one
/// turntable angle. The frequency grid must be uniform and ascending.
struct S21Sweep {
    double azimuth_deg = 0.0;
    std::vector<double> freqs_hz;
    std::vector<std::complex<double>> s21;
    SweepMeta meta;

    void validate() const
    {
        if (freqs_hz.size() < 2)
            throw format_error("S21 sweep: need at least 2 frequency points");
        if (freqs_hz.size() != s21.size())
            throw format_error("S21 sweep: frequency and S21 vectors differ in length");
        const double step = freqs_hz[1] - freqs_hz[0];
        if (!(step > 0.0))
            throw format_error("S21 sweep: frequency grid must be ascending");
        for (std::size_t i = 1; i < freqs_hz.size(); ++i) {
            const double d = freqs_hz[i] - freqs_hz[i - 1];
            if (std::abs(d - step) > 1e-6 * step)
                throw format_error("S21 sweep: frequency grid not uniform at index " +
                                   std::to_string(i));
        }
    }

    double freq_step_hz() const { return freqs_hz[1] - freqs_hz[0]; }
    /// Delay bin width 1/(N * df).
    double delay_resolution_s() const { return 1.0 / (double(freqs_hz.size()) * freq_step_hz()); }
    /// Unambiguous delay range 1/df.
    double unambiguous_range_s() const { return 1.0 / freq_step_hz(); }
};

/// Time-domain channel impulse response on a uniform delay grid.
struct Cir {
    std::vector<double> delays_s;
    std::vector<std::complex<double>> taps;
};

enum class GateWindow { rectangular, raised_cosine };

struct GateSpec {
    double center_delay_s = 0.0;
    double half_width_s = 5e-9;
    GateWindow window = GateWindow::raised_cosine;
    /// Fraction of the gate width tapered (half on each edge); Tukey shape.
    double taper_fraction = 0.25;
};

// -------------------------------------------------------------- operations

/// Inverse DFT of the sweep onto the delay grid m / (N * df),
/// h[m] = (1/N) sum_n S[n] e^{+j 2 pi n m / N }. Energy is preserved:
/// sum |h|^2 = (1/N) sum |S|^2. An optional Tukey taper across the band
/// suppresses gating sidelobes (default off).
inline Cir freq_to_time(const S21Sweep& sweep, double freq_taper_fraction = 0.0)
{
    sweep.validate();
    const std::size_t n = sweep.s21.size();
    std::vector<std::complex<double>> spectrum = sweep.s21;
    if (freq_taper_fraction > 0.0) {
        const double edge = freq_taper_fraction * double(n) / 2.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double from_edge = std::min(double(i), double(n - 1 - i));
            if (from_edge < edge)
                spectrum[i] *= 0.5 * (1.0 - std::cos(pi * (from_edge + 0.5) / edge));
        }
    }
    Cir cir;
    cir.delays_s.resize(n);
    cir.taps.resize(n);
    const double dtau = sweep.delay_resolution_s();
    for (std::size_t m = 0; m < n; ++m) {
        // Phasor recurrence instead of a trig call per term.
        const std::complex<double> w = std::polar(1.0, 2.0 * pi * double(m) / double(n));
        std::complex<double> phase = 1.0;
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += spectrum[k] * phase;
            phase *= w;
        }
        cir.delays_s[m] = double(m) * dtau;
        cir.taps[m] = acc / double(n);
    }
    return cir;
}

/// Per-delay-bin power |h|^2.
inline std::vector<std::pair<double, double>> compute_pdp(const Cir& cir)
{
    std::vector<std::pair<double, double>> pdp;
    pdp.reserve(cir.taps.size());
    for (std::size_t i = 0; i < cir.taps.size(); ++i)
        pdp.emplace_back(cir.delays_s[i], std::norm(cir.taps[i]));
    return pdp;
}

/// Zero taps outside the gate; taper the edges per the window spec. Only the
/// rectangular window is idempotent — a reapplied taper squares its ramp.
inline Cir time_gate(const Cir& cir, const GateSpec& gate)
{
    if (!(gate.half_width_s > 0.0))
        throw std::domain_error("time_gate: half width must be > 0");
    const double lo = gate.center_delay_s - gate.half_width_s;
    const double hi = gate.center_delay_s + gate.half_width_s;
    if (cir.delays_s.empty())
        throw std::domain_error("time_gate: empty CIR");
    if (lo < cir.delays_s.front() - 1e-15 || hi > cir.delays_s.back() + 1e-15)
        throw std::domain_error("time_gate: gate extends outside the CIR delay range");

    Cir out = cir;
    const double taper_len =
        gate.window == GateWindow::raised_cosine ? gate.taper_fraction * gate.half_width_s : 0.0;
    for (std::size_t i = 0; i < out.taps.size(); ++i) {
        const double d = out.delays_s[i];
        if (d < lo || d > hi) {
            out.taps[i] = 0.0;
            continue;
        }
        if (taper_len > 0.0) {
            const double from_edge = std::min(d - lo, hi - d);
            if (from_edge < taper_len)
                out.taps[i] *= 0.5 * (1.0 - std::cos(pi * from_edge / taper_len));
        }
    }
    return out;
}

/// Sum of squared tap magnitudes; plays the role of Pr/Pt in the radar
/// equation.
inline double echo_power(const Cir& cir)
{
    double acc = 0.0;
    for (const auto& t : cir.taps)
        acc += std::norm(t);
    return acc;
}

/// Radar-equation inversion: sigma = Pr (4 pi)^3 R1^2 R2^2 / (Pt Gt Gr lambda^2),
/// reported in dBsm. A zero power ratio yields -inf ("below noise floor").
inline double radar_equation_rcs(double pr_over_pt, double gt_dbi, double gr_dbi, double r1_m,
                                 double r2_m, double lambda_m)
{
    if (!(r1_m > 0.0) || !(r2_m > 0.0) || !(lambda_m > 0.0))
        throw std::domain_error("radar_equation_rcs: geometry and wavelength must be > 0");
    if (pr_over_pt < 0.0)
        throw std::domain_error("radar_equation_rcs: power ratio must be >= 0");
    if (pr_over_pt == 0.0)
        return -std::numeric_limits<double>::infinity();
    const double four_pi_cubed = std::pow(4.0 * pi, 3);
    const double sigma = pr_over_pt * four_pi_cubed * r1_m * r1_m * r2_m * r2_m /
                         (db_to_linear(gt_dbi) * db_to_linear(gr_dbi) * lambda_m * lambda_m);
    return linear_to_db(sigma);
}

// -------------------------------------------------------------- calibration

struct CalibrationResult {
    double offset_db;      // added to all subsequent RCS estimates
    double discrepancy_db; // |measured mean - theoretical|
    bool within_bound;     // discrepancy below the 2 dB sanity bound
    double theoretical_dbsm;
    double measured_mean_dbsm;
};

/// Single scalar calibration offset from a metal-sphere measurement:
/// offset = theoretical - mean(measured), with the mean taken in dB.
inline CalibrationResult calibrate_with_sphere(std::span<const double> measured_dbsm,
                                               double sphere_radius_m,
                                               double bound_db = 2.0)
{
    if (measured_dbsm.empty())
        throw std::domain_error("calibrate_with_sphere: no measurements");
    const double theoretical = linear_to_db(sphere_rcs(sphere_radius_m));
    double mean = 0.0;
    for (double v : measured_dbsm)
        mean += v;
    mean /= double(measured_dbsm.size());
    const double offset = theoretical - mean;
    return {offset, std::abs(offset), std::abs(offset) <= bound_db, theoretical, mean};
}

// ------------------------------------------------------------ sweep file IO

/// Sweep CSV: a '# meta: {...}' comment line carrying azimuth and link
/// metadata, then header freq_hz,s21_re,s21_im. A JSON sidecar named
/// <stem>.json is honored when the comment block is absent.
inline void write_sweep_csv(const S21Sweep& sweep, const std::string& path)
{
    sweep.validate();
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    nlohmann::json meta = {{"azimuth_deg", sweep.azimuth_deg},
                           {"tx_gain_dbi", sweep.meta.tx_gain_dbi},
                           {"rx_gain_dbi", sweep.meta.rx_gain_dbi},
                           {"r1_m", sweep.meta.r1_m},
                           {"r2_m", sweep.meta.r2_m},
                           {"center_freq_hz", sweep.meta.center_freq_hz}};
    out << "# meta: " << meta.dump() << "\n";
    out << "freq_hz,s21_re,s21_im\n";
    for (std::size_t i = 0; i < sweep.freqs_hz.size(); ++i)
        out << format_double(sweep.freqs_hz[i]) << ',' << format_double(sweep.s21[i].real())
            << ',' << format_double(sweep.s21[i].imag()) << '\n';
}

inline S21Sweep read_sweep_csv(const std::string& path)
{
    const CsvTable table = read_csv(path);
    require_header(table, {"freq_hz", "s21_re", "s21_im"}, path);

    std::optional<nlohmann::json> meta;
    const std::string tag = "# meta: ";
    for (const auto& c : table.comments)
        if (c.rfind(tag, 0) == 0)
            meta = nlohmann::json::parse(c.substr(tag.size()), nullptr, false);
    if (!meta || meta->is_discarded()) {
        const auto sidecar = std::filesystem::path(path).replace_extension(".json");
        std::ifstream in(sidecar);
        if (!in)
            throw format_error(path + ": no '# meta:' comment and no sidecar " +
                               sidecar.string());
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded())
            throw format_error(sidecar.string() + ": invalid JSON");
        meta = std::move(j);
    }

    S21Sweep sweep;
    try {
        sweep.azimuth_deg = meta->at("azimuth_deg").get<double>();
        sweep.meta.tx_gain_dbi = meta->at("tx_gain_dbi").get<double>();
        sweep.meta.rx_gain_dbi = meta->at("rx_gain_dbi").get<double>();
        sweep.meta.r1_m = meta->at("r1_m").get<double>();
        sweep.meta.r2_m = meta->at("r2_m").get<double>();
        sweep.meta.center_freq_hz = meta->at("center_freq_hz").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw format_error(path + ": sweep metadata: " + e.what());
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const std::string ctx = path + ":" + std::to_string(table.row_lines[i]);
        sweep.freqs_hz.push_back(parse_double_field(table.rows[i][0], ctx));
        sweep.s21.emplace_back(parse_double_field(table.rows[i][1], ctx),
                               parse_double_field(table.rows[i][2], ctx));
    }
    sweep.validate();
    return sweep;
}

// ------------------------------------------------------------------ ingest

struct IngestOptions {
    /// Gate center; when unset, the round-trip delay (r1 + r2)/c from each
    /// sweep's own metadata is used.
    std::optional<double> gate_center_s;
    double gate_half_width_s = 5e-9;
    GateWindow gate_window = GateWindow::raised_cosine;
    double gate_taper_fraction = 0.25;
    double freq_taper_fraction = 0.0;
    double calibration_offset_db = 0.0;
    /// Echo powers below this level report "below noise floor" and are
    /// excluded from the dataset instead of propagating -inf.
    double noise_floor_db = -120.0;
    double angle_step_deg = 5.0;
    std::string target_label;
};

struct IngestResult {
    MeasuredRcsDataset dataset;
    std::vector<std::string> warnings;
};

/// Process one sweep through the full chain. Returns nullopt when the gated
/// echo power falls below the noise floor.
inline std::optional<double> sweep_to_rcs_dbsm(const S21Sweep& sweep, const IngestOptions& opts)
{
    const Cir cir = freq_to_time(sweep, opts.freq_taper_fraction);
    GateSpec gate;
    gate.center_delay_s = opts.gate_center_s
                              ? *opts.gate_center_s
                              : (sweep.meta.r1_m + sweep.meta.r2_m) / speed_of_light_m_s;
    gate.half_width_s = opts.gate_half_width_s;
    gate.window = opts.gate_window;
    gate.taper_fraction = opts.gate_taper_fraction;
    const double power = echo_power(time_gate(cir, gate));
    if (power <= 0.0 || linear_to_db(power) < opts.noise_floor_db)
        return std::nullopt;
    const double lambda = speed_of_light_m_s / sweep.meta.center_freq_hz;
    return radar_equation_rcs(power, sweep.meta.tx_gain_dbi, sweep.meta.rx_gain_dbi,
                              sweep.meta.r1_m, sweep.meta.r2_m, lambda) +
           opts.calibration_offset_db;
}

/// Ingest all angle_<deg>.csv sweeps in one or more directories. Metadata
/// must be consistent within a directory (one capture = one center
/// frequency); the azimuth grid must have no gaps at the expected step.
inline IngestResult ingest_dataset(const std::vector<std::string>& directories,
                                   const IngestOptions& opts)
{
    IngestResult result;
    result.dataset.target_label = opts.target_label;
    result.dataset.angle_step_deg = opts.angle_step_deg;

    std::size_t total_files = 0;
    for (const auto& dir : directories) {
        if (!std::filesystem::is_directory(dir))
            throw format_error("'" + dir + "' is not a directory");
        std::vector<std::string> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            const std::string name = entry.path().filename().string();
            if (entry.is_regular_file() && name.rfind("angle_", 0) == 0 &&
                entry.path().extension() == ".csv")
                files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        total_files += files.size();
        if (files.empty())
            continue;

        std::vector<S21Sweep> sweeps;
        sweeps.reserve(files.size());
        for (const auto& f : files)
            sweeps.push_back(read_sweep_csv(f));

        // Metadata consistency within the capture.
        std::vector<std::string> offenders;
        const SweepMeta& ref = sweeps.front().meta;
        auto differs = [](double a, double b) { return std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b)); };
        for (std::size_t i = 1; i < sweeps.size(); ++i) {
            const SweepMeta& m = sweeps[i].meta;
            if (differs(m.tx_gain_dbi, ref.tx_gain_dbi) || differs(m.rx_gain_dbi, ref.rx_gain_dbi) ||
                differs(m.r1_m, ref.r1_m) || differs(m.r2_m, ref.r2_m) ||
                differs(m.center_freq_hz, ref.center_freq_hz))
                offenders.push_back(files[i]);
        }
        if (!offenders.empty()) {
            std::ostringstream os;
            os << dir << ": inconsistent sweep metadata in";
            for (const auto& f : offenders)
                os << ' ' << std::filesystem::path(f).filename().string();
            throw format_error(os.str());
        }

        // Angle grid coverage at the expected step.
        std::set<long> present;
        for (const auto& s : sweeps)
            present.insert(std::lround(s.azimuth_deg / opts.angle_step_deg));
        const long n_expected = std::lround(360.0 / opts.angle_step_deg);
        for (long i = 0; i < n_expected; ++i)
            if (!present.count(i))
                throw format_error(dir + ": missing angle " +
                                   format_double(double(i) * opts.angle_step_deg) +
                                   " deg in sweep grid");

        const double freq_ghz = ref.center_freq_hz / 1e9;
        for (const auto& sweep : sweeps) {
            const auto rcs = sweep_to_rcs_dbsm(sweep, opts);
            if (!rcs) {
                result.warnings.push_back("azimuth " + format_double(sweep.azimuth_deg) +
                                          " deg at " + format_double(freq_ghz) +
                                          " GHz: below noise floor, skipped");
                continue;
            }
            result.dataset.samples.push_back({freq_ghz, wrap_deg_360(sweep.azimuth_deg), *rcs});
        }
    }

    if (total_files == 0)
        throw format_error("no sweeps found");
    return result;
}

} // namespace rcskit
