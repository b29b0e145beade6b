#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pairgen/constants.hpp"
#include "pairgen/coupling.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/jsa.hpp"
#include "pairgen/modes.hpp"
#include "pairgen/raman.hpp"
#include "pairgen/sellmeier.hpp"
#include "pairgen/units.hpp"

namespace pairgen::cfg {

/// Sectioned key = value text, '#' or ';' comments.
struct IniFile {
    std::map<std::string, std::map<std::string, std::string>> sections;

    static IniFile parse(const std::string& text) {
        IniFile ini;
        std::string section = "";
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::string_view s = units::trim(line);
            if (s.empty() || s.front() == '#' || s.front() == ';') continue;
            if (s.front() == '[') {
                if (s.back() != ']')
                    throw ConfigError("config line " + std::to_string(lineno) + ": bad section header");
                section = std::string(units::trim(s.substr(1, s.size() - 2)));
                ini.sections[section];
                continue;
            }
            const size_t eq = s.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
            const std::string key(units::trim(s.substr(0, eq)));
            const std::string value(units::trim(s.substr(eq + 1)));
            if (key.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
            ini.sections[section][key] = value;
        }
        return ini;
    }

    static IniFile load(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw ConfigError("cannot read config file '" + path + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        return parse(ss.str());
    }

    bool has(const std::string& sec, const std::string& key) const {
        auto it = sections.find(sec);
        return it != sections.end() && it->second.count(key) > 0;
    }
    std::string get(const std::string& sec, const std::string& key, const std::string& fallback) const {
        auto it = sections.find(sec);
        if (it == sections.end()) return fallback;
        auto jt = it->second.find(key);
        return jt == it->second.end() ? fallback : jt->second;
    }
};

struct GridSettings {
    int n1 = 1024;
    int n2 = 1024;
    double span = twopi * 6e12;  // rad/s
    int inner_points = 64;
    int overlap_grid = 256;
    int area_nodes = 8;
    bool frozen_factors = false;
};

struct NoiseSettings {
    double ps_min = 0.01;        // W
    double ps_max = 100.0;
    int ps_points = 41;
    double delta_min = 0.1e12;   // Hz
    double delta_max = 30e12;
    int delta_points = 60;
    double filter_bandwidth = 0.1e12;
    double representative_ps = 1.0;
    double summary_delta = 1.0e12;
};

struct ResolvedConfig {
    material::SellmeierModel core = material::fused_silica_malitson();
    double cladding_index = 1.0;

    double diameter = 0.0; // 0: solve the phasematch diameter
    double bracket_min = 0.5e-6;
    double bracket_max = 1.2e-6;

    jsa::PulseSpec pump{jsa::PulseRole::Pump, 532e-9, 10e-12, 10e3};
    jsa::PulseSpec seed{jsa::PulseRole::Seed, 1596e-9, 1e-9, 1.0};
    modes::ModeId pump_mode{modes::ModeFamily::HE, 1, 2};
    modes::ModeId seed_mode{modes::ModeFamily::HE, 1, 1};
    // Branch whose n_eff curve supplies the pump-band walk-off and curvature;
    // the bundled reference configs pin this to EH11 (see README).
    modes::ModeId pump_dispersion_branch{modes::ModeFamily::EH, 1, 1};
    bool branch_is_pump_mode = false;

    double length = 0.010;
    coupling::Chi3Model chi{};
    double beta2_scale = 1.0;

    raman::RamanModel raman{};
    double sfwm_area = 84.0e-12;
    double sfwm_group_index = 1.463;
    double sfwm_beta2 = -26.18e-27;
    double sfwm_single_pump = 0.0; // 0: sqrt(Pp Ps)

    GridSettings grid{};
    NoiseSettings noise{};
    int threads = 0;

    double omega_seed() const { return seed.omega0(); }
    double omega_pump() const { return pump.omega0(); }

    /// Deterministic serialization of every resolved value, for hashing.
    std::string canonical() const {
        std::string out;
        char buf[64];
        auto put = [&](const char* key, double v) {
            std::snprintf(buf, sizeof buf, "%s=%.17g\n", key, v);
            out += buf;
        };
        auto puts_ = [&](const char* key, const std::string& v) { out += key; out += "="; out += v; out += "\n"; };
        puts_("material", core.name);
        for (size_t i = 0; i < core.terms.size(); ++i) {
            put(("B" + std::to_string(i)).c_str(), core.terms[i].strength);
            put(("L" + std::to_string(i)).c_str(), core.terms[i].resonance_um);
        }
        put("cladding_index", cladding_index);
        put("diameter", diameter);
        put("bracket_min", bracket_min);
        put("bracket_max", bracket_max);
        put("pump_lambda", pump.lambda0);
        put("pump_tau", pump.tau);
        put("pump_power", pump.power);
        put("seed_lambda", seed.lambda0);
        put("seed_tau", seed.tau);
        put("seed_power", seed.power);
        puts_("pump_mode", pump_mode.str());
        puts_("seed_mode", seed_mode.str());
        puts_("pump_dispersion_branch", branch_is_pump_mode ? "auto" : pump_dispersion_branch.str());
        put("length", length);
        put("chi_bar", chi.chi_bar);
        put("chi_1122", chi.c1122);
        put("chi_1212", chi.c1212);
        put("chi_1221", chi.c1221);
        put("n_bar", chi.n_bar);
        put("beta2_scale", beta2_scale);
        put("raman_tau1", raman.tau1);
        put("raman_tau2", raman.tau2);
        put("raman_peak_gain", raman.peak_gain);
        put("raman_ref_lambda", raman.ref_lambda);
        put("raman_rolloff", raman.rolloff);
        put("raman_temperature", raman.temperature);
        put("sfwm_area", sfwm_area);
        put("sfwm_group_index", sfwm_group_index);
        put("sfwm_beta2", sfwm_beta2);
        put("sfwm_single_pump", sfwm_single_pump);
        put("grid_n1", grid.n1);
        put("grid_n2", grid.n2);
        put("grid_span", grid.span);
        put("grid_inner_points", grid.inner_points);
        put("grid_overlap", grid.overlap_grid);
        put("grid_area_nodes", grid.area_nodes);
        put("frozen_factors", grid.frozen_factors ? 1.0 : 0.0);
        put("noise_ps_min", noise.ps_min);
        put("noise_ps_max", noise.ps_max);
        put("noise_ps_points", noise.ps_points);
        put("noise_delta_min", noise.delta_min);
        put("noise_delta_max", noise.delta_max);
        put("noise_delta_points", noise.delta_points);
        put("noise_filter", noise.filter_bandwidth);
        put("noise_rep_ps", noise.representative_ps);
        put("noise_summary_delta", noise.summary_delta);
        return out;
    }
};

namespace detail {

inline double qty(const IniFile& ini, const std::string& sec, const std::string& key,
                  units::Dim dim, double fallback) {
    if (!ini.has(sec, key)) return fallback;
    return units::parse_quantity(ini.get(sec, key, ""), dim, sec + "." + key);
}

inline int integer(const IniFile& ini, const std::string& sec, const std::string& key, int fallback) {
    if (!ini.has(sec, key)) return fallback;
    const double v = units::parse_quantity(ini.get(sec, key, ""), units::Dim::Dimensionless,
                                           sec + "." + key);
    return static_cast<int>(v);
}

inline bool flag(const IniFile& ini, const std::string& sec, const std::string& key, bool fallback) {
    if (!ini.has(sec, key)) return fallback;
    const std::string v = ini.get(sec, key, "");
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError("key '" + sec + "." + key + "': expected true/false");
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(std::string(units::trim(cur)));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!units::trim(cur).empty()) out.push_back(std::string(units::trim(cur)));
    return out;
}

} // namespace detail

/// Applies a parsed config file on top of the built-in defaults.
inline ResolvedConfig resolve(const IniFile& ini) {
    using units::Dim;
    ResolvedConfig c;

    const std::string mat = ini.get("material", "core", "fused_silica_malitson");
    if (mat == "fused_silica_malitson") {
        c.core = material::fused_silica_malitson();
    } else if (mat == "custom") {
        const auto bs = detail::split_list(ini.get("material", "sellmeier_b", ""));
        const auto ls = detail::split_list(ini.get("material", "sellmeier_lambda_um", ""));
        if (bs.empty() || bs.size() != ls.size())
            throw ConfigError("material.custom needs matching sellmeier_b / sellmeier_lambda_um lists");
        c.core.terms.clear();
        c.core.name = "custom";
        for (size_t i = 0; i < bs.size(); ++i)
            c.core.terms.push_back({units::parse_quantity(bs[i], Dim::Dimensionless, "sellmeier_b"),
                                    units::parse_quantity(ls[i], Dim::Dimensionless, "sellmeier_lambda_um")});
        c.core.lambda_min_um = detail::qty(ini, "material", "lambda_min_um", Dim::Dimensionless, 0.21);
        c.core.lambda_max_um = detail::qty(ini, "material", "lambda_max_um", Dim::Dimensionless, 3.71);
    } else {
        throw ConfigError("material.core: unknown preset '" + mat + "'");
    }
    c.cladding_index = detail::qty(ini, "material", "cladding_index", Dim::Dimensionless, 1.0);

    const std::string dia = ini.get("fiber", "diameter", "auto");
    c.diameter = (dia == "auto") ? 0.0 : units::parse_quantity(dia, Dim::Length, "fiber.diameter");
    const auto bracket = detail::split_list(ini.get("fiber", "bracket", "0.5 um, 1.2 um"));
    if (bracket.size() != 2) throw ConfigError("fiber.bracket: expected 'd_min, d_max'");
    c.bracket_min = units::parse_quantity(bracket[0], Dim::Length, "fiber.bracket");
    c.bracket_max = units::parse_quantity(bracket[1], Dim::Length, "fiber.bracket");

    c.pump.lambda0 = detail::qty(ini, "pump", "wavelength", Dim::Length, c.pump.lambda0);
    c.pump.tau = detail::qty(ini, "pump", "duration", Dim::Time, c.pump.tau);
    c.pump.power = detail::qty(ini, "pump", "power", Dim::Power, c.pump.power);
    c.pump_mode = modes::ModeId::parse(ini.get("pump", "mode", "HE12"));
    const std::string branch = ini.get("pump", "dispersion_branch", "EH11");
    if (branch == "auto") {
        c.branch_is_pump_mode = true;
        c.pump_dispersion_branch = c.pump_mode;
    } else {
        c.pump_dispersion_branch = modes::ModeId::parse(branch);
    }

    c.seed.lambda0 = detail::qty(ini, "seed", "wavelength", Dim::Length, c.seed.lambda0);
    c.seed.tau = detail::qty(ini, "seed", "duration", Dim::Time, c.seed.tau);
    c.seed.power = detail::qty(ini, "seed", "power", Dim::Power, c.seed.power);
    c.seed_mode = modes::ModeId::parse(ini.get("seed", "mode", "HE11"));

    c.length = detail::qty(ini, "interaction", "length", Dim::Length, c.length);
    c.chi.chi_bar = detail::qty(ini, "interaction", "chi3", Dim::Chi3, c.chi.chi_bar);
    c.chi.n_bar = detail::qty(ini, "interaction", "n_bar", Dim::Dimensionless, c.chi.n_bar);
    c.chi.c1122 = detail::qty(ini, "interaction", "chi_1122", Dim::Dimensionless, c.chi.c1122);
    c.chi.c1212 = detail::qty(ini, "interaction", "chi_1212", Dim::Dimensionless, c.chi.c1212);
    c.chi.c1221 = detail::qty(ini, "interaction", "chi_1221", Dim::Dimensionless, c.chi.c1221);
    c.beta2_scale = detail::qty(ini, "interaction", "beta2_scale", Dim::Dimensionless, 1.0);

    c.grid.n1 = detail::integer(ini, "grid", "n1", c.grid.n1);
    c.grid.n2 = detail::integer(ini, "grid", "n2", c.grid.n2);
    if (c.grid.n1 < 64 || c.grid.n2 < 64) throw ConfigError("grid.n1/n2 must be >= 64");
    c.grid.span = twopi * detail::qty(ini, "grid", "span", Dim::Frequency, c.grid.span / twopi);
    c.grid.inner_points = detail::integer(ini, "grid", "inner_points", c.grid.inner_points);
    c.grid.overlap_grid = detail::integer(ini, "grid", "overlap_grid", c.grid.overlap_grid);
    c.grid.area_nodes = detail::integer(ini, "grid", "area_nodes", c.grid.area_nodes);
    c.grid.frozen_factors = detail::flag(ini, "grid", "frozen_factors", c.grid.frozen_factors);

    c.raman.tau1 = detail::qty(ini, "raman", "tau1", Dim::Time, c.raman.tau1);
    c.raman.tau2 = detail::qty(ini, "raman", "tau2", Dim::Time, c.raman.tau2);
    c.raman.peak_gain = detail::qty(ini, "raman", "peak_gain", Dim::RamanGain, c.raman.peak_gain);
    c.raman.ref_lambda = detail::qty(ini, "raman", "reference_wavelength", Dim::Length, c.raman.ref_lambda);
    c.raman.rolloff = detail::qty(ini, "raman", "rolloff", Dim::Frequency, c.raman.rolloff);
    c.raman.temperature = detail::qty(ini, "raman", "temperature", Dim::Temperature, c.raman.temperature);

    c.sfwm_area = detail::qty(ini, "sfwm_reference", "area", Dim::Area, c.sfwm_area);
    c.sfwm_group_index = detail::qty(ini, "sfwm_reference", "group_index", Dim::Dimensionless, c.sfwm_group_index);
    c.sfwm_beta2 = detail::qty(ini, "sfwm_reference", "beta2", Dim::Gvd, c.sfwm_beta2);
    const std::string psp = ini.get("sfwm_reference", "single_pump_power", "auto");
    c.sfwm_single_pump = (psp == "auto") ? 0.0 : units::parse_quantity(psp, Dim::Power, "sfwm_reference.single_pump_power");
    c.raman.ref_area = c.sfwm_area;

    c.noise.ps_min = detail::qty(ini, "noise", "seed_power_min", Dim::Power, c.noise.ps_min);
    c.noise.ps_max = detail::qty(ini, "noise", "seed_power_max", Dim::Power, c.noise.ps_max);
    c.noise.ps_points = detail::integer(ini, "noise", "seed_power_points", c.noise.ps_points);
    c.noise.delta_min = detail::qty(ini, "noise", "delta_min", Dim::Frequency, c.noise.delta_min);
    c.noise.delta_max = detail::qty(ini, "noise", "delta_max", Dim::Frequency, c.noise.delta_max);
    c.noise.delta_points = detail::integer(ini, "noise", "delta_points", c.noise.delta_points);
    c.noise.filter_bandwidth = detail::qty(ini, "noise", "filter_bandwidth", Dim::Frequency, c.noise.filter_bandwidth);
    c.noise.representative_ps = detail::qty(ini, "noise", "representative_seed_power", Dim::Power, c.noise.representative_ps);
    c.noise.summary_delta = detail::qty(ini, "noise", "summary_delta", Dim::Frequency, c.noise.summary_delta);

    c.threads = detail::integer(ini, "run", "threads", c.threads);

    if (c.pump.tau <= 0 || c.seed.tau <= 0) throw ConfigError("pulse durations must be positive");
    if (c.pump.power < 0 || c.seed.power < 0) throw ConfigError("pulse powers must be nonnegative");
    if (c.length <= 0) throw ConfigError("interaction.length must be positive");
    return c;
}

inline ResolvedConfig default_config() { return resolve(IniFile{}); }

} // namespace pairgen::cfg
