#pragma once

namespace pairgen::io::schemas {

// Shipped schema documents; the copies under schemas/ are written from these
// strings and a test keeps them in sync.

inline constexpr const char* design = R"({
  "type": "object",
  "required": ["diameter_um", "neff_pump", "neff_seed", "ng_seed", "ng_pump",
               "beta2_seed_ps2km", "beta2_pump_ps2km", "A_um2", "gamma", "gamma_sfwm"],
  "properties": {
    "diameter_um": {"type": "number"},
    "diameter_solved": {"type": "boolean"},
    "neff_pump": {"type": "number"},
    "neff_seed": {"type": "number"},
    "ng_seed": {"type": "number"},
    "ng_pump": {"type": "number"},
    "beta2_seed_ps2km": {"type": "number"},
    "beta2_pump_ps2km": {"type": "number"},
    "ng_pump_mode": {"type": "number"},
    "beta2_pump_mode_ps2km": {"type": "number"},
    "A_um2": {"type": "number"},
    "A_um2_alt_orientation": {"type": "number"},
    "pump_orientation": {"type": "string"},
    "gamma": {"type": "number"},
    "gamma_sfwm": {"type": "number"},
    "n_bulk_seed": {"type": "number"},
    "n_bulk_pump": {"type": "number"},
    "n_bar": {"type": "number"},
    "pump_mode": {"type": "string"},
    "seed_mode": {"type": "string"},
    "pump_dispersion_branch": {"type": "string"}
  },
  "additionalProperties": false
})";

inline constexpr const char* metrics = R"({
  "type": "object",
  "required": ["eta2", "eta2_closed_form", "K", "g2", "bandwidth_THz", "A_um2", "diameter_um"],
  "properties": {
    "eta2": {"type": "number"},
    "eta2_closed_form": {"type": "number"},
    "K": {"type": "number"},
    "g2": {"type": "number"},
    "bandwidth_THz": {"type": "number"},
    "A_um2": {"type": "number"},
    "diameter_um": {"type": "number"},
    "n_bar": {"type": "number"},
    "span_THz_used": {"type": "number"},
    "grid_n1": {"type": "integer"},
    "grid_n2": {"type": "integer"},
    "frozen_factors": {"type": "boolean"},
    "first_order_warning": {"type": "boolean"},
    "axis_min_THz": {"type": "number"},
    "axis_max_THz": {"type": "number"},
    "axis_center_THz": {"type": "number"}
  },
  "additionalProperties": false
})";

inline constexpr const char* noise_summary = R"({
  "type": "object",
  "required": ["suppression_ratio", "fom", "fom_exact", "area_gain_factor",
               "gamma", "gamma_sfwm", "representative_seed_power_W"],
  "properties": {
    "suppression_ratio": {"type": "number"},
    "fom": {"type": "number"},
    "fom_exact": {"type": "number"},
    "area_gain_factor": {"type": "number"},
    "gamma": {"type": "number"},
    "gamma_sfwm": {"type": "number"},
    "representative_seed_power_W": {"type": "number"},
    "summary_delta_THz": {"type": "number"},
    "single_pump_power_W": {"type": "number"},
    "sstpdc_signal_above_raman": {"type": "boolean"},
    "sfwm_signal_below_raman": {"type": "boolean"},
    "raman_peak_THz": {"type": "number"},
    "A_um2": {"type": "number"},
    "A_sfwm_um2": {"type": "number"}
  },
  "additionalProperties": false
})";

inline constexpr const char* manifest = R"({
  "type": "object",
  "required": ["config_hash", "tool_version", "timestamp_utc", "outputs"],
  "properties": {
    "config_hash": {"type": "string"},
    "tool_version": {"type": "string"},
    "timestamp_utc": {"type": "string"},
    "command": {"type": "string"},
    "threads": {"type": "integer"},
    "outputs": {"type": "array", "items": {"type": "string"}}
  },
  "additionalProperties": false
})";

} // namespace pairgen::io::schemas
