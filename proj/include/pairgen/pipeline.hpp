#pragma once

#include <chrono>
#include <ctime>
#include <memory>
#include <string>
#include <vector>

#include "pairgen/config.hpp"
#include "pairgen/constants.hpp"
#include "pairgen/coupling.hpp"
#include "pairgen/io.hpp"
#include "pairgen/image.hpp"
#include "pairgen/jsa.hpp"
#include "pairgen/modes.hpp"
#include "pairgen/raman.hpp"
#include "pairgen/sha256.hpp"
#include "pairgen/threading.hpp"
#include "pairgen/version.hpp"

namespace pairgen::pipeline {

struct DesignReport {
    cfg::ResolvedConfig config;
    bool diameter_solved = false;
    double diameter = 0.0;
    double neff_seed = 0.0;
    double neff_pump = 0.0;
    modes::ModeDispersion seed_disp;
    modes::ModeDispersion branch_disp;     // pump-band dispersion branch at omega_p
    modes::ModeDispersion pump_mode_disp;  // phasematched pump mode at omega_p
    coupling::EffectiveArea area;          // chosen pump orientation
    coupling::EffectiveArea area_alt;      // the other orientation
    std::string pump_orientation = "even";
    double gamma = 0.0;
    double gamma_sfwm = 0.0;
    double n_bulk_seed = 0.0;
    double n_bulk_pump = 0.0;
};

inline DesignReport run_design(const cfg::ResolvedConfig& c) {
    DesignReport d;
    d.config = c;
    const double ws = c.omega_seed();
    const double wp = c.omega_pump();

    if (c.diameter > 0.0) {
        d.diameter = c.diameter;
    } else {
        const auto pm = modes::find_phasematch_diameter(c.core, c.pump_mode, wp, c.seed_mode, ws,
                                                        c.bracket_min, c.bracket_max,
                                                        c.cladding_index);
        d.diameter = pm.diameter;
        d.diameter_solved = true;
    }
    d.config.diameter = d.diameter;

    const modes::FiberSpec fiber{d.diameter, c.core, c.cladding_index};
    d.seed_disp = modes::dispersion_at(fiber, c.seed_mode, ws);
    d.pump_mode_disp = modes::dispersion_at(fiber, c.pump_mode, wp);
    d.branch_disp = (c.pump_dispersion_branch == c.pump_mode)
                        ? d.pump_mode_disp
                        : modes::dispersion_at(fiber, c.pump_dispersion_branch, wp);
    d.neff_seed = d.seed_disp.neff;
    d.neff_pump = d.pump_mode_disp.neff;

    const modes::GuidedMode seed(fiber, c.seed_mode, ws);
    const modes::GuidedMode pump_even(fiber, c.pump_mode, wp, modes::Orientation::Even);
    const modes::GuidedMode pump_odd(fiber, c.pump_mode, wp, modes::Orientation::Odd);
    coupling::AreaOptions aopt;
    aopt.grid = c.grid.overlap_grid;
    const auto area_even = coupling::effective_area(seed, seed, seed, pump_even, c.chi, aopt);
    const auto area_odd = coupling::effective_area(seed, seed, seed, pump_odd, c.chi, aopt);
    if (std::abs(area_even.inv_signed) >= std::abs(area_odd.inv_signed)) {
        d.area = area_even;
        d.area_alt = area_odd;
        d.pump_orientation = "even";
    } else {
        d.area = area_odd;
        d.area_alt = area_even;
        d.pump_orientation = "odd";
    }

    d.gamma = coupling::gamma_pair(c.chi, ws, d.seed_disp.group_velocity,
                                   d.branch_disp.group_velocity, d.area.value);
    d.gamma_sfwm = coupling::gamma_sfwm(c.chi, ws, c0 / c.sfwm_group_index, c.sfwm_area);
    d.n_bulk_seed = material::refractive_index_omega(c.core, ws);
    d.n_bulk_pump = material::refractive_index_omega(c.core, wp);
    return d;
}

inline io::json design_json(const DesignReport& d) {
    io::json j;
    j["diameter_um"] = d.diameter * 1e6;
    j["diameter_solved"] = d.diameter_solved;
    j["neff_pump"] = d.neff_pump;
    j["neff_seed"] = d.neff_seed;
    j["ng_seed"] = d.seed_disp.group_index;
    j["ng_pump"] = d.branch_disp.group_index;
    j["beta2_seed_ps2km"] = d.seed_disp.beta2 * 1e27;
    j["beta2_pump_ps2km"] = d.branch_disp.beta2 * 1e27;
    j["ng_pump_mode"] = d.pump_mode_disp.group_index;
    j["beta2_pump_mode_ps2km"] = d.pump_mode_disp.beta2 * 1e27;
    j["A_um2"] = d.area.value * 1e12;
    j["A_um2_alt_orientation"] = d.area_alt.value * 1e12;
    j["pump_orientation"] = d.pump_orientation;
    j["gamma"] = d.gamma;
    j["gamma_sfwm"] = d.gamma_sfwm;
    j["n_bulk_seed"] = d.n_bulk_seed;
    j["n_bulk_pump"] = d.n_bulk_pump;
    j["n_bar"] = d.config.chi.n_bar;
    j["pump_mode"] = d.config.pump_mode.str();
    j["seed_mode"] = d.config.seed_mode.str();
    j["pump_dispersion_branch"] = d.config.pump_dispersion_branch.str();
    return j;
}

struct JsaResult {
    jsa::JsaGrid grid;
    double eta2 = 0.0;
    double eta2_closed_form = 0.0;
    double schmidt_k = 0.0;
    double g2 = 0.0;
    double bandwidth_hz = 0.0;
    double span_used = 0.0;
    bool first_order_warning = false;
};

namespace detail {

struct BandSetup {
    jsa::DispersionTables tables;
    jsa::AreaMap area_map;
    double omega_center = 0.0;
};

/// Builds the n_eff tables and the coarse effective-area map for one JSA run.
inline BandSetup prepare_bands(const cfg::ResolvedConfig& c, const DesignReport& d, double span) {
    BandSetup out;
    const double ws = c.omega_seed();
    const double wp = c.omega_pump();
    const double wc = 0.5 * (wp - ws); // pair-band centre by energy conservation
    out.omega_center = wc;

    const modes::FiberSpec fiber{d.diameter, c.core, c.cladding_index};
    modes::ModeSolver solver(fiber);

    jsa::DispersionTables t;
    t.omega_s = ws;
    t.omega_p = wp;
    t.beta2_seed = d.seed_disp.beta2;
    t.beta2_scale = c.beta2_scale;

    const double seed_half = 6.0 / c.seed.tau;
    const double lo_s = std::min(wc - 1.35 * span, ws - 2.0 * seed_half);
    const double hi_s = std::max(wc + 1.35 * span, ws + 2.0 * seed_half);
    {
        std::vector<double> xs, ys;
        const int n = 96;
        for (int i = 0; i < n; ++i) {
            const double w = lo_s + (hi_s - lo_s) * i / (n - 1);
            xs.push_back(w);
            ys.push_back(solver.neff(c.seed_mode, w));
        }
        t.neff_seed = numeric::CubicSpline(std::move(xs), std::move(ys));
    }
    {
        const double half_p = 2.3 * span + 2.0 * seed_half;
        std::vector<double> xp, yp;
        const int n = 128;
        for (int i = 0; i < n; ++i) {
            const double w = wp - half_p + 2.0 * half_p * i / (n - 1);
            xp.push_back(w);
            yp.push_back(solver.neff(c.pump_dispersion_branch, w));
        }
        t.neff_pump = numeric::CubicSpline(std::move(xp), std::move(yp));
    }
    t.k_branch_center = solver.neff(c.pump_dispersion_branch, wp) * wp / c0;
    t.k_pump_center = solver.neff(c.pump_mode, wp) * wp / c0;
    out.tables = std::move(t);

    // Effective-area variation across the grid: coarse nodes, bilinear in between.
    const int nodes = std::max(2, c.grid.area_nodes);
    if (c.grid.frozen_factors) {
        out.area_map = jsa::AreaMap::uniform(d.area.inv_signed);
        return out;
    }
    const modes::Orientation orient = d.pump_orientation == "even" ? modes::Orientation::Even
                                                                   : modes::Orientation::Odd;
    std::vector<double> ax(nodes);
    for (int i = 0; i < nodes; ++i) ax[i] = wc - span + 2.0 * span * i / (nodes - 1);

    std::vector<std::shared_ptr<coupling::SampledProfile>> band_profiles(nodes);
    for (int i = 0; i < nodes; ++i)
        band_profiles[i] = std::make_shared<coupling::SampledProfile>(
            modes::GuidedMode(fiber, c.seed_mode, ax[i]));
    const coupling::SampledProfile seed_profile{modes::GuidedMode(fiber, c.seed_mode, ws)};

    // Grid size: reuse the converged resolution from the design-stage area.
    coupling::AreaOptions aopt;
    aopt.grid = aopt.max_grid = std::max(d.area.grid_used, 256);

    Eigen::MatrixXd inv(nodes, nodes);
    std::vector<std::shared_ptr<coupling::SampledProfile>> pump_profiles(
        static_cast<size_t>(nodes) * nodes);
    for (int i = 0; i < nodes; ++i)
        for (int j = 0; j < nodes; ++j)
            pump_profiles[static_cast<size_t>(i) * nodes + j] =
                std::make_shared<coupling::SampledProfile>(
                    modes::GuidedMode(fiber, c.pump_mode, ax[i] + ax[j] + ws, orient));

    numeric::parallel_for_rows(static_cast<size_t>(nodes) * nodes, c.threads,
                               [&](size_t b, size_t e) {
                                   for (size_t idx = b; idx < e; ++idx) {
                                       const int i = static_cast<int>(idx) / nodes;
                                       const int j = static_cast<int>(idx) % nodes;
                                       const auto ea = coupling::effective_area_sampled(
                                           *band_profiles[i], *band_profiles[j], seed_profile,
                                           *pump_profiles[idx], c.chi, aopt);
                                       inv(i, j) = ea.inv_signed;
                                   }
                               });
    out.area_map = jsa::AreaMap::bilinear(ax, ax, std::move(inv));
    return out;
}

} // namespace detail

/// Runs the full JSA computation. With widen_on_truncation the grid span grows
/// by x1.5 (up to three times) when the truncation guard trips, which keeps
/// parameter sweeps over short pump pulses from aborting.
inline JsaResult run_jsa(const cfg::ResolvedConfig& c, const DesignReport& d,
                         bool widen_on_truncation = false) {
    double span = c.grid.span;
    for (int attempt = 0;; ++attempt) {
        const auto bands = detail::prepare_bands(c, d, span);
        jsa::JsaParams prm;
        prm.pump = c.pump;
        prm.pump.role = jsa::PulseRole::Pump;
        prm.seed = c.seed;
        prm.seed.role = jsa::PulseRole::Seed;
        prm.length = c.length;
        prm.chi = c.chi;
        prm.area = bands.area_map;
        prm.n1 = c.grid.n1;
        prm.n2 = c.grid.n2;
        prm.span = span;
        prm.inner_points = c.grid.inner_points;
        prm.frozen_factors = c.grid.frozen_factors;
        prm.threads = c.threads;
        try {
            JsaResult res;
            res.grid = jsa::compute_jsa(prm, bands.tables);
            res.eta2 = res.grid.eta2;
            res.span_used = span;
            res.first_order_warning = res.eta2 > 0.1;
            res.eta2_closed_form = jsa::pair_probability_closed_form(
                d.gamma, c.length, c.seed.tau, c.pump.tau, d.seed_disp.beta2 * c.beta2_scale,
                c.pump.power, c.seed.power);
            if (res.eta2 > 0.0) {
                res.schmidt_k = jsa::schmidt_number(res.grid);
                res.g2 = jsa::g2_zero(res.schmidt_k);
                res.bandwidth_hz = jsa::generation_bandwidth(res.grid);
            }
            return res;
        } catch (const GridTruncationError&) {
            if (!widen_on_truncation || attempt >= 3) throw;
            span *= 1.5;
        }
    }
}

inline io::json metrics_json(const DesignReport& d, const JsaResult& r) {
    io::json j;
    j["eta2"] = r.eta2;
    j["eta2_closed_form"] = r.eta2_closed_form;
    j["K"] = r.schmidt_k;
    j["g2"] = r.g2;
    j["bandwidth_THz"] = r.bandwidth_hz / 1e12;
    j["A_um2"] = d.area.value * 1e12;
    j["diameter_um"] = d.diameter * 1e6;
    j["n_bar"] = d.config.chi.n_bar;
    j["span_THz_used"] = r.span_used / twopi / 1e12;
    j["grid_n1"] = static_cast<int>(r.grid.omega1.size());
    j["grid_n2"] = static_cast<int>(r.grid.omega2.size());
    j["frozen_factors"] = d.config.grid.frozen_factors;
    j["first_order_warning"] = r.first_order_warning;
    j["axis_min_THz"] = r.grid.omega1.front() / twopi / 1e12;
    j["axis_max_THz"] = r.grid.omega1.back() / twopi / 1e12;
    j["axis_center_THz"] = 0.5 * (r.grid.omega1.front() + r.grid.omega1.back()) / twopi / 1e12;
    return j;
}

inline std::string jsa_csv(const jsa::JsaGrid& grid) {
    io::CsvWriter csv({"omega1_THz", "omega2_THz", "re", "im", "abs2"});
    const size_t n1 = grid.omega1.size(), n2 = grid.omega2.size();
    std::string body = csv.str();
    body.reserve(n1 * n2 * 80);
    for (size_t i = 0; i < n1; ++i) {
        const std::string w1 = io::fmt(grid.omega1[i] / twopi / 1e12, "%.9e");
        for (size_t j = 0; j < n2; ++j) {
            const auto v = grid.amplitude(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            body += w1;
            body += ',';
            body += io::fmt(grid.omega2[j] / twopi / 1e12, "%.9e");
            body += ',';
            body += io::fmt(v.real(), "%.9e");
            body += ',';
            body += io::fmt(v.imag(), "%.9e");
            body += ',';
            body += io::fmt(std::norm(v), "%.9e");
            body += "\r\n";
        }
    }
    return body;
}

inline std::vector<uint8_t> jsi_png(const jsa::JsaGrid& grid) {
    Eigen::MatrixXd intensity = grid.amplitude.cwiseAbs2();
    return io::render_heatmap_png(intensity);
}

// ---- parameter sweep ------------------------------------------------------

struct SweepRow {
    std::string key;
    std::string value_text;
    double value_si = 0.0;
    double eta2 = 0.0;
    double eta2_closed_form = 0.0;
    double schmidt_k = 0.0;
    double g2 = 0.0;
    double bandwidth_thz = 0.0;
};

inline cfg::ResolvedConfig apply_sweep_key(cfg::ResolvedConfig c, const std::string& key,
                                           const std::string& value, double* si_out) {
    using units::Dim;
    double v = 0.0;
    if (key == "tau_p") {
        v = units::parse_quantity(value, Dim::Time, key);
        c.pump.tau = v;
    } else if (key == "tau_s") {
        v = units::parse_quantity(value, Dim::Time, key);
        c.seed.tau = v;
    } else if (key == "L") {
        v = units::parse_quantity(value, Dim::Length, key);
        c.length = v;
    } else if (key == "beta2_scale") {
        v = units::parse_quantity(value, Dim::Dimensionless, key);
        c.beta2_scale = v;
    } else if (key == "P_p") {
        v = units::parse_quantity(value, Dim::Power, key);
        c.pump.power = v;
    } else if (key == "P_s") {
        v = units::parse_quantity(value, Dim::Power, key);
        c.seed.power = v;
    } else {
        throw ConfigError("sweep key must be one of tau_p, tau_s, L, beta2_scale, P_p, P_s (got '" +
                          key + "')");
    }
    if (si_out) *si_out = v;
    return c;
}

/// One metrics row per value; the design (diameter, modes, area) is shared
/// because none of the sweep keys move the phasematch.
inline std::vector<SweepRow> run_sweep(const cfg::ResolvedConfig& base, const std::string& key,
                                       const std::vector<std::string>& values) {
    const DesignReport d = run_design(base);
    std::vector<SweepRow> rows;
    for (const auto& val : values) {
        SweepRow row;
        row.key = key;
        row.value_text = val;
        cfg::ResolvedConfig c = apply_sweep_key(base, key, val, &row.value_si);
        DesignReport dv = d;
        dv.config = c;
        dv.config.diameter = d.diameter;
        const JsaResult r = run_jsa(c, dv, /*widen_on_truncation=*/true);
        row.eta2 = r.eta2;
        row.eta2_closed_form = r.eta2_closed_form;
        row.schmidt_k = r.schmidt_k;
        row.g2 = r.g2;
        row.bandwidth_thz = r.bandwidth_hz / 1e12;
        rows.push_back(row);
    }
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    io::CsvWriter csv({"key", "value", "value_si", "eta2", "eta2_closed_form", "K", "g2",
                       "bandwidth_THz"});
    for (const auto& r : rows)
        csv.row({r.key, r.value_text, io::fmt(r.value_si), io::fmt(r.eta2),
                 io::fmt(r.eta2_closed_form), io::fmt(r.schmidt_k), io::fmt(r.g2),
                 io::fmt(r.bandwidth_thz)});
    return csv.str();
}

// ---- noise / figure of merit ----------------------------------------------

struct RamanOutputs {
    std::vector<raman::NoisePoint> rows;
    io::json summary;
};

inline RamanOutputs run_raman(const cfg::ResolvedConfig& c, const DesignReport& d) {
    raman::RamanModel model = c.raman;
    model.ref_area = c.sfwm_area;
    const raman::RamanCurve curve(model);

    raman::NoiseSweepInputs in;
    in.gamma = d.gamma;
    in.gamma_sfwm = d.gamma_sfwm;
    in.area = d.area.value;
    in.area_sfwm = c.sfwm_area;
    in.p_pump = c.pump.power;
    in.L = c.length;
    in.beta2_seed = d.seed_disp.beta2 * c.beta2_scale;
    in.beta2_sfwm = c.sfwm_beta2;
    in.seed_lambda = c.seed.lambda0;
    in.p_single = c.sfwm_single_pump;

    std::vector<double> powers(static_cast<size_t>(c.noise.ps_points));
    for (int i = 0; i < c.noise.ps_points; ++i) {
        const double t = c.noise.ps_points == 1 ? 0.0 : static_cast<double>(i) / (c.noise.ps_points - 1);
        powers[static_cast<size_t>(i)] =
            c.noise.ps_min * std::pow(c.noise.ps_max / c.noise.ps_min, t);
    }
    std::vector<double> deltas(static_cast<size_t>(c.noise.delta_points));
    for (int i = 0; i < c.noise.delta_points; ++i) {
        const double t = c.noise.delta_points == 1 ? 0.0 : static_cast<double>(i) / (c.noise.delta_points - 1);
        deltas[static_cast<size_t>(i)] = c.noise.delta_min + (c.noise.delta_max - c.noise.delta_min) * t;
    }

    RamanOutputs out;
    out.rows = raman::noise_sweep(curve, in, powers, deltas);

    const double ps = c.noise.representative_ps;
    const double psingle = in.p_single > 0.0 ? in.p_single : std::sqrt(in.p_pump * ps);
    const auto fom = raman::figure_of_merit(curve, in.area, in.area_sfwm, in.p_pump, ps, in.gamma,
                                            in.gamma_sfwm, in.L, in.beta2_seed, in.beta2_sfwm,
                                            c.noise.summary_delta, in.seed_lambda, in.p_single);

    // Representative-band ordering: pair signal vs its own Raman floor.
    bool dual_above = true, single_below = true;
    for (double delta : {0.5e12, 1.0e12, 2.0e12}) {
        const double sig_d = raman::sstpdc_density(in.gamma, in.p_pump, ps, in.L, in.beta2_seed, delta);
        const double noise_d = raman::raman_density(curve, ps, in.L, delta, in.area, true, in.seed_lambda);
        const double sig_s = raman::sfwm_density(in.gamma_sfwm, psingle, in.L, in.beta2_sfwm, delta);
        const double noise_s =
            raman::raman_density(curve, psingle, in.L, delta, in.area_sfwm, true, in.seed_lambda);
        dual_above = dual_above && (sig_d > noise_d);
        single_below = single_below && (sig_s < noise_s);
    }

    io::json s;
    s["suppression_ratio"] = psingle * in.area / (ps * in.area_sfwm);
    s["fom"] = fom.approx;
    s["fom_exact"] = fom.exact;
    s["area_gain_factor"] = in.area_sfwm / in.area;
    s["gamma"] = in.gamma;
    s["gamma_sfwm"] = in.gamma_sfwm;
    s["representative_seed_power_W"] = ps;
    s["summary_delta_THz"] = c.noise.summary_delta / 1e12;
    s["single_pump_power_W"] = psingle;
    s["sstpdc_signal_above_raman"] = dual_above;
    s["sfwm_signal_below_raman"] = single_below;
    s["raman_peak_THz"] = curve.peak_delta() / 1e12;
    s["A_um2"] = in.area * 1e12;
    s["A_sfwm_um2"] = in.area_sfwm * 1e12;
    out.summary = s;
    return out;
}

inline std::string noise_csv(const std::vector<raman::NoisePoint>& rows) {
    io::CsvWriter csv({"P_s_W", "Delta_THz", "sfwm_signal", "sstpdc_signal", "raman_sfwm",
                       "raman_sstpdc", "snr_sfwm", "snr_sstpdc", "fom"});
    for (const auto& r : rows)
        csv.row({io::fmt(r.p_seed), io::fmt(r.delta_hz / 1e12), io::fmt(r.sfwm_signal),
                 io::fmt(r.sstpdc_signal), io::fmt(r.raman_sfwm), io::fmt(r.raman_sstpdc),
                 io::fmt(r.snr_sfwm), io::fmt(r.snr_sstpdc), io::fmt(r.fom)});
    return csv.str();
}

inline io::json manifest_json(const cfg::ResolvedConfig& c, const std::string& command,
                              const std::vector<std::string>& outputs) {
    io::json j;
    j["config_hash"] = io::Sha256::of(c.canonical());
    j["tool_version"] = version_string();
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char ts[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", &tm);
    j["timestamp_utc"] = ts;
    j["command"] = command;
    j["threads"] = c.threads;
    j["outputs"] = outputs;
    return j;
}

/// Diagnostic dump of the two n_eff branch tables.
inline std::string neff_csv(const cfg::ResolvedConfig& c, const DesignReport& d, int points = 200) {
    const modes::FiberSpec fiber{d.diameter, c.core, c.cladding_index};
    modes::ModeSolver solver(fiber);
    io::CsvWriter csv({"branch", "mode", "omega_THz", "neff"});
    const double ws = c.omega_seed(), wp = c.omega_pump();
    for (int i = 0; i < points; ++i) {
        const double w = ws * (0.95 + 0.1 * i / (points - 1));
        csv.row({"seed", c.seed_mode.str(), io::fmt(w / twopi / 1e12), io::fmt(solver.neff(c.seed_mode, w), "%.15e")});
    }
    for (int i = 0; i < points; ++i) {
        const double w = wp * (0.97 + 0.06 * i / (points - 1));
        csv.row({"pump", c.pump_dispersion_branch.str(), io::fmt(w / twopi / 1e12),
                 io::fmt(solver.neff(c.pump_dispersion_branch, w), "%.15e")});
    }
    return csv.str();
}

} // namespace pairgen::pipeline
