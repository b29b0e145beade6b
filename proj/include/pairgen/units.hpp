#pragma once

#include <charconv>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "pairgen/errors.hpp"

namespace pairgen::units {

enum class Dim {
    Length,
    Time,
    Frequency,
    Power,
    Temperature,
    Area,
    Gvd,        // s^2/m
    Chi3,       // m^2/V^2
    RamanGain,  // m/W
    Dimensionless,
};

inline const char* dim_name(Dim d) {
    switch (d) {
        case Dim::Length: return "length";
        case Dim::Time: return "time";
        case Dim::Frequency: return "frequency";
        case Dim::Power: return "power";
        case Dim::Temperature: return "temperature";
        case Dim::Area: return "area";
        case Dim::Gvd: return "group-velocity dispersion";
        case Dim::Chi3: return "chi3";
        case Dim::RamanGain: return "raman gain";
        case Dim::Dimensionless: return "dimensionless";
    }
    return "?";
}

struct UnitEntry {
    const char* symbol;
    Dim dim;
    double to_si;
};

// "um2" style spellings are accepted alongside the caret forms seen in configs.
inline const std::vector<UnitEntry>& unit_table() {
    static const std::vector<UnitEntry> table = {
        {"km", Dim::Length, 1e3},   {"cm", Dim::Length, 1e-2},
        {"mm", Dim::Length, 1e-3},  {"um", Dim::Length, 1e-6},
        {"µm", Dim::Length, 1e-6},  {"nm", Dim::Length, 1e-9},
        {"pm", Dim::Length, 1e-12}, {"m", Dim::Length, 1.0},

        {"fs", Dim::Time, 1e-15}, {"ps", Dim::Time, 1e-12},
        {"ns", Dim::Time, 1e-9},  {"us", Dim::Time, 1e-6},
        {"µs", Dim::Time, 1e-6},  {"ms", Dim::Time, 1e-3},
        {"s", Dim::Time, 1.0},

        {"THz", Dim::Frequency, 1e12}, {"GHz", Dim::Frequency, 1e9},
        {"MHz", Dim::Frequency, 1e6},  {"kHz", Dim::Frequency, 1e3},
        {"Hz", Dim::Frequency, 1.0},

        {"uW", Dim::Power, 1e-6}, {"mW", Dim::Power, 1e-3},
        {"kW", Dim::Power, 1e3},  {"MW", Dim::Power, 1e6},
        {"GW", Dim::Power, 1e9},  {"W", Dim::Power, 1.0},

        {"K", Dim::Temperature, 1.0},

        {"um^2", Dim::Area, 1e-12}, {"um2", Dim::Area, 1e-12},
        {"µm^2", Dim::Area, 1e-12}, {"mm^2", Dim::Area, 1e-6},
        {"m^2", Dim::Area, 1.0},    {"m2", Dim::Area, 1.0},

        {"ps^2/km", Dim::Gvd, 1e-27}, {"ps2/km", Dim::Gvd, 1e-27},
        {"fs^2/mm", Dim::Gvd, 1e-27}, {"ps^2/m", Dim::Gvd, 1e-24},
        {"fs^2/m", Dim::Gvd, 1e-30},  {"s^2/m", Dim::Gvd, 1.0},

        {"m^2/V^2", Dim::Chi3, 1.0}, {"m2/V2", Dim::Chi3, 1.0},

        {"cm/W", Dim::RamanGain, 1e-2}, {"m/W", Dim::RamanGain, 1.0},
    };
    return table;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Locale-independent double parse; returns chars consumed.
inline size_t parse_double(std::string_view s, double& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{}) return 0;
    return static_cast<size_t>(ptr - begin);
}

// Parse "532 nm", "2.5e-22 m^2/V^2", "-26.18 ps^2/km". A bare number is only
// accepted when expected == Dimensionless.
inline double parse_quantity(std::string_view text, Dim expected, const std::string& key = "") {
    std::string_view s = trim(text);
    auto fail = [&](const std::string& msg) -> double {
        std::string where = key.empty() ? std::string("value") : "key '" + key + "'";
        throw ConfigError(where + ": " + msg + " (got \"" + std::string(text) + "\")");
    };
    double value = 0.0;
    size_t used = parse_double(s, value);
    if (used == 0) return fail("expected a number");
    std::string_view rest = trim(s.substr(used));
    if (rest.empty()) {
        if (expected == Dim::Dimensionless) return value;
        return fail(std::string("missing unit for a ") + dim_name(expected) + " quantity");
    }
    if (expected == Dim::Dimensionless) return fail("expected a bare number");
    for (const auto& u : unit_table()) {
        if (rest == u.symbol) {
            if (u.dim != expected)
                return fail(std::string("unit '") + u.symbol + "' is a " + dim_name(u.dim) +
                            ", expected " + dim_name(expected));
            return value * u.to_si;
        }
    }
    return fail("unknown unit '" + std::string(rest) + "'");
}

} // namespace pairgen::units
