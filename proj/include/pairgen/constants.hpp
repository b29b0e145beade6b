#pragma once

namespace pairgen {

// 2018 SI values.
inline constexpr double c0      = 299792458.0;        // m/s
inline constexpr double hbar    = 1.054571817e-34;    // J s
inline constexpr double h_planck = 6.62607015e-34;    // J s
inline constexpr double k_boltz = 1.380649e-23;       // J/K
inline constexpr double eps0    = 8.8541878128e-12;   // F/m
inline constexpr double mu0     = 1.25663706212e-6;   // H/m
inline constexpr double pi      = 3.14159265358979323846;

inline constexpr double twopi = 2.0 * pi;

// Angular frequency of a vacuum wavelength.
inline constexpr double omega_of_lambda(double lambda_m) { return twopi * c0 / lambda_m; }
inline constexpr double lambda_of_omega(double omega) { return twopi * c0 / omega; }

} // namespace pairgen
