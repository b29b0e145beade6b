#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"

namespace pairgen::material {

struct SellmeierTerm {
    double strength;           // dimensionless oscillator strength B_i
    double resonance_um;       // resonance wavelength in micrometres
};

/// Bulk dispersion model n(lambda) = sqrt(1 + sum B_i l^2/(l^2 - l_i^2)), l in um.
struct SellmeierModel {
    std::vector<SellmeierTerm> terms;
    double lambda_min_um = 0.2;
    double lambda_max_um = 3.7;
    std::string name = "custom";

    bool operator==(const SellmeierModel&) const = default;
};

/// Fused silica fit used throughout as the shipped default core material.
inline SellmeierModel fused_silica_malitson() {
    SellmeierModel m;
    m.terms = {{0.6961663, 0.0684043}, {0.4079426, 0.1162414}, {0.8974794, 9.896161}};
    m.lambda_min_um = 0.21;
    m.lambda_max_um = 3.71;
    m.name = "fused_silica_malitson";
    return m;
}

/// Dispersionless stand-in with index n at all wavelengths (n=1 when B=0).
inline SellmeierModel constant_index(double n) {
    SellmeierModel m;
    if (n != 1.0) {
        // Single far-infrared resonance approximates a flat index over the optical window.
        m.terms = {{n * n - 1.0, 0.0}};
    }
    m.lambda_min_um = 1e-3;
    m.lambda_max_um = 1e3;
    m.name = "constant_index";
    return m;
}

namespace detail {
inline double sellmeier_sum(const SellmeierModel& m, double lam_um) {
    double s = 1.0;
    for (const auto& t : m.terms) {
        const double denom = lam_um * lam_um - t.resonance_um * t.resonance_um;
        if (denom == 0.0)
            throw DomainError("sellmeier: wavelength coincides with a resonance at " +
                              std::to_string(t.resonance_um) + " um");
        s += t.strength * lam_um * lam_um / denom;
    }
    return s;
}
} // namespace detail

/// Refractive index at vacuum wavelength lambda (metres).
inline double refractive_index(const SellmeierModel& m, double lambda_m) {
    const double lam_um = lambda_m * 1e6;
    if (!(lam_um >= m.lambda_min_um && lam_um <= m.lambda_max_um))
        throw DomainError("sellmeier '" + m.name + "': wavelength " + std::to_string(lam_um) +
                          " um outside validity range [" + std::to_string(m.lambda_min_um) + ", " +
                          std::to_string(m.lambda_max_um) + "] um");
    const double s = detail::sellmeier_sum(m, lam_um);
    if (s <= 0.0) throw DomainError("sellmeier '" + m.name + "': negative permittivity");
    return std::sqrt(s);
}

inline double refractive_index_omega(const SellmeierModel& m, double omega) {
    return refractive_index(m, lambda_of_omega(omega));
}

struct IndexDerivatives {
    double n;
    double dn_domega;    // s
    double d2n_domega2;  // s^2
};

/// Analytic dn/dw and d2n/dw2 via the chain rule through lambda = 2 pi c / w.
inline IndexDerivatives index_derivatives(const SellmeierModel& m, double omega) {
    const double lambda_m = lambda_of_omega(omega);
    const double lam = lambda_m * 1e6; // um
    if (!(lam >= m.lambda_min_um && lam <= m.lambda_max_um))
        throw DomainError("sellmeier '" + m.name + "': frequency outside validity range");

    // S = n^2 and its lambda-derivatives (per um).
    double S = 1.0, dS = 0.0, d2S = 0.0;
    for (const auto& t : m.terms) {
        const double r2 = t.resonance_um * t.resonance_um;
        const double denom = lam * lam - r2;
        if (denom == 0.0) throw DomainError("sellmeier: on-resonance evaluation");
        S += t.strength * lam * lam / denom;
        dS += t.strength * (-2.0 * lam * r2) / (denom * denom);
        d2S += t.strength * (-2.0 * r2 / (denom * denom) + 8.0 * lam * lam * r2 / (denom * denom * denom));
    }
    if (S <= 0.0) throw DomainError("sellmeier: negative permittivity");
    const double n = std::sqrt(S);
    const double dn_dlam_um = dS / (2.0 * n);
    const double d2n_dlam2_um = d2S / (2.0 * n) - dS * dS / (4.0 * n * S);
    // convert to per-metre
    const double dn_dlam = dn_dlam_um * 1e6;
    const double d2n_dlam2 = d2n_dlam2_um * 1e12;
    // lambda(omega): dl/dw = -2 pi c/w^2, d2l/dw2 = 4 pi c/w^3
    const double dl = -twopi * c0 / (omega * omega);
    const double d2l = 2.0 * twopi * c0 / (omega * omega * omega);
    return {n, dn_dlam * dl, d2n_dlam2 * dl * dl + dn_dlam * d2l};
}

} // namespace pairgen::material
