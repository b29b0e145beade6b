#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "pairgen/bessel.hpp"
#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/quadrature.hpp"
#include "pairgen/roots.hpp"
#include "pairgen/sellmeier.hpp"

namespace pairgen::modes {

enum class ModeFamily { HE, EH, TE, TM };

inline const char* family_name(ModeFamily f) {
    switch (f) {
        case ModeFamily::HE: return "HE";
        case ModeFamily::EH: return "EH";
        case ModeFamily::TE: return "TE";
        case ModeFamily::TM: return "TM";
    }
    return "?";
}

struct ModeId {
    ModeFamily family = ModeFamily::HE;
    int azimuthal = 1; // nu; hybrid families need nu >= 1, TE/TM need nu == 0
    int radial = 1;    // m >= 1

    bool operator==(const ModeId&) const = default;
    auto operator<=>(const ModeId&) const = default;

    std::string str() const {
        return std::string(family_name(family)) + std::to_string(azimuthal) + std::to_string(radial);
    }

    static ModeId parse(const std::string& s) {
        if (s.size() < 4) throw ConfigError("mode name too short: '" + s + "'");
        ModeFamily fam;
        const std::string head = s.substr(0, 2);
        if (head == "HE") fam = ModeFamily::HE;
        else if (head == "EH") fam = ModeFamily::EH;
        else if (head == "TE") fam = ModeFamily::TE;
        else if (head == "TM") fam = ModeFamily::TM;
        else throw ConfigError("unknown mode family in '" + s + "'");
        if (!std::isdigit(static_cast<unsigned char>(s[2])) ||
            !std::isdigit(static_cast<unsigned char>(s[3])) || s.size() != 4)
            throw ConfigError("mode name must look like HE11/EH11/TE01: '" + s + "'");
        ModeId id{fam, s[2] - '0', s[3] - '0'};
        id.validate();
        return id;
    }

    void validate() const {
        const bool hybrid = family == ModeFamily::HE || family == ModeFamily::EH;
        if (hybrid && azimuthal < 1)
            throw ConfigError("hybrid modes need azimuthal order >= 1: " + str());
        if (!hybrid && azimuthal != 0)
            throw ConfigError("TE/TM modes need azimuthal order 0: " + str());
        if (radial < 1) throw ConfigError("radial order must be >= 1: " + str());
    }
};

struct FiberSpec {
    double diameter = 0.0; // m
    material::SellmeierModel core;
    double cladding_index = 1.0;

    double radius() const { return 0.5 * diameter; }
    double core_index(double omega) const { return material::refractive_index_omega(core, omega); }
    double v_number(double omega) const {
        const double n1 = core_index(omega);
        return radius() * (omega / c0) * std::sqrt(n1 * n1 - cladding_index * cladding_index);
    }
};

namespace detail {

struct CharParams {
    double a, k0, n1, n2;
    double u(double neff) const { return a * k0 * std::sqrt(std::max(n1 * n1 - neff * neff, 0.0)); }
    double w(double neff) const { return a * k0 * std::sqrt(std::max(neff * neff - n2 * n2, 0.0)); }
};

struct CharValue {
    double value;
    double scale; // magnitude scale for a normalized residual
};

// Hybrid dispersion relation, split into the two quadratic branches:
//   J'(u)/(u J) = -(1+s) K'/(2 w K) -+ sqrt(D),   s = n2^2/n1^2
// with the minus sign selecting the HE family and plus selecting EH
// (the HE branch is the one where the fundamental persists to V -> 0).
inline CharValue hybrid_char(const CharParams& p, int nu, bool he, double neff) {
    using numeric::bessel_j;
    using numeric::bessel_j_prime;
    using numeric::bessel_k;
    using numeric::bessel_k_prime;
    const double u = p.u(neff), w = p.w(neff);
    const double s = (p.n2 * p.n2) / (p.n1 * p.n1);
    const double J = bessel_j_prime(nu, u) / (u * bessel_j(nu, u));
    const double K = bessel_k_prime(nu, w) / (w * bessel_k(nu, w));
    const double q1 = 1.0 / (u * u) + 1.0 / (w * w);
    const double q2 = 1.0 / (u * u) + s / (w * w);
    const double D = 0.25 * (1.0 - s) * (1.0 - s) * K * K + nu * nu * q1 * q2;
    const double root = std::sqrt(D);
    const double val = J + 0.5 * (1.0 + s) * K + (he ? root : -root);
    const double scale = std::abs(J) + std::abs(0.5 * (1.0 + s) * K) + root + 1.0;
    return {val, scale};
}

inline CharValue te_char(const CharParams& p, double neff) {
    using numeric::bessel_j;
    using numeric::bessel_k;
    const double u = p.u(neff), w = p.w(neff);
    const double tj = bessel_j(1, u) / (u * bessel_j(0, u));
    const double tk = bessel_k(1, w) / (w * bessel_k(0, w));
    return {tj + tk, std::abs(tj) + std::abs(tk) + 1.0};
}

inline CharValue tm_char(const CharParams& p, double neff) {
    using numeric::bessel_j;
    using numeric::bessel_k;
    const double u = p.u(neff), w = p.w(neff);
    const double tj = p.n1 * p.n1 * bessel_j(1, u) / (u * bessel_j(0, u));
    const double tk = p.n2 * p.n2 * bessel_k(1, w) / (w * bessel_k(0, w));
    return {tj + tk, std::abs(tj) + std::abs(tk) + 1.0};
}

inline CharValue characteristic(const CharParams& p, const ModeId& mode, double neff) {
    switch (mode.family) {
        case ModeFamily::HE: return hybrid_char(p, mode.azimuthal, true, neff);
        case ModeFamily::EH: return hybrid_char(p, mode.azimuthal, false, neff);
        case ModeFamily::TE: return te_char(p, neff);
        case ModeFamily::TM: return tm_char(p, neff);
    }
    throw NumericalError("characteristic: bad family");
}

} // namespace detail

/// Normalized residual of the step-index dispersion relation at a candidate n_eff.
inline double characteristic_residual(const FiberSpec& fiber, const ModeId& mode,
                                      double omega, double neff) {
    detail::CharParams p{fiber.radius(), omega / c0, fiber.core_index(omega), fiber.cladding_index};
    const auto cv = detail::characteristic(p, mode, neff);
    return cv.value / cv.scale;
}

struct BranchRootOptions {
    int scan_points = 400;     // scan density per pole-free subinterval
    double residual_tol = 1e-10;
};

/// All guided n_eff roots of one (family, nu) branch, in descending order,
/// so that result[m-1] is the radial-order-m mode.
///
/// The scan interval is split at the poles of J'/(u J) (zeros of J_nu) before
/// bracketing, which keeps pole sign-flips from masking adjacent roots; the
/// residual filter drops brackets that converge onto a pole.
inline std::vector<double> branch_roots(const FiberSpec& fiber, const ModeId& mode, double omega,
                                        const BranchRootOptions& opt = {}) {
    mode.validate();
    const double n1 = fiber.core_index(omega);
    const double n2 = fiber.cladding_index;
    if (!(n1 > n2))
        throw NumericalError("fiber is not guiding: core index " + std::to_string(n1) +
                             " <= cladding " + std::to_string(n2));
    detail::CharParams p{fiber.radius(), omega / c0, n1, n2};

    const double lo = n2 + 1e-9;
    const double hi = n1 - 1e-9;
    if (!(hi > lo)) return {};

    // Subinterval breakpoints: n_eff values where the core Bessel function vanishes.
    const int pole_nu = (mode.family == ModeFamily::TE || mode.family == ModeFamily::TM)
                            ? 0
                            : mode.azimuthal;
    std::vector<double> edges{hi};
    const double u_max = p.u(lo);
    for (int k = 1; k < 200; ++k) {
        const double z = numeric::bessel_j_zero(pole_nu, k);
        if (z >= u_max) break;
        const double ne = std::sqrt(std::max(n1 * n1 - z * z / (p.a * p.a * p.k0 * p.k0), 0.0));
        if (ne > lo && ne < hi) edges.push_back(ne);
    }
    edges.push_back(lo);
    std::sort(edges.begin(), edges.end(), std::greater<double>());

    auto f = [&](double x) { return detail::characteristic(p, mode, x).value; };

    std::vector<double> roots;
    const int n_scan = std::max(opt.scan_points, 16);
    for (size_t seg = 0; seg + 1 < edges.size(); ++seg) {
        // Inset slightly from pole edges; cluster scan points toward both ends.
        const double top = edges[seg] - (seg == 0 ? 0.0 : 1e-12);
        const double bot = edges[seg + 1] + (seg + 2 == edges.size() ? 0.0 : 1e-12);
        if (!(top > bot)) continue;
        double x_prev = top, f_prev = f(top);
        for (int i = 1; i <= n_scan; ++i) {
            const double t = 0.5 * (1.0 - std::cos(pi * static_cast<double>(i) / n_scan));
            const double x = top + (bot - top) * t;
            const double fx = f(x);
            if (std::isfinite(f_prev) && std::isfinite(fx) && f_prev * fx < 0.0) {
                const double r = numeric::brent(f, x, x_prev, fx, f_prev, 1e-16);
                if (std::abs(characteristic_residual(fiber, mode, omega, r)) < opt.residual_tol)
                    roots.push_back(r);
            }
            x_prev = x;
            f_prev = fx;
        }
    }
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    // De-duplicate near-coincident finds at subinterval seams.
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-11; }),
                roots.end());
    return roots;
}

/// Effective index of one guided mode. Throws NotGuidedError below cutoff.
inline double solve_neff(const FiberSpec& fiber, const ModeId& mode, double omega,
                         const BranchRootOptions& opt = {}) {
    const auto roots = branch_roots(fiber, mode, omega, opt);
    if (static_cast<int>(roots.size()) < mode.radial) {
        throw NotGuidedError(mode.str() + " not guided at lambda = " +
                             std::to_string(lambda_of_omega(omega) * 1e9) + " nm, d = " +
                             std::to_string(fiber.diameter * 1e6) + " um (V = " +
                             std::to_string(fiber.v_number(omega)) + ", branch has " +
                             std::to_string(roots.size()) + " root(s))");
    }
    return roots[mode.radial - 1];
}

/// Concurrent-read n_eff memo over one fiber geometry.
class ModeSolver {
public:
    explicit ModeSolver(FiberSpec fiber) : fiber_(std::move(fiber)) {}

    const FiberSpec& fiber() const { return fiber_; }

    double neff(const ModeId& mode, double omega) const {
        const Key key{mode, omega};
        {
            std::shared_lock lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        const double value = solve_neff(fiber_, mode, omega);
        std::unique_lock lock(mutex_);
        cache_.emplace(key, value);
        return value;
    }

private:
    struct Key {
        ModeId mode;
        double omega;
        bool operator<(const Key& o) const {
            if (mode != o.mode) return mode < o.mode;
            return omega < o.omega;
        }
    };
    FiberSpec fiber_;
    mutable std::shared_mutex mutex_;
    mutable std::map<Key, double> cache_;
};

enum class Orientation { Even, Odd };

/// One solved vector mode with on-demand field evaluation.
///
/// Radial profile functions (R, P, Z) define the electric field as
///   E_r = i R(r) c(nu phi), E_phi = i P(r) s(nu phi), E_z = Z(r) c(nu phi)
/// with (c, s) = (cos, sin) for the Even orientation and (sin, -cos) for Odd.
/// The displacement profile d = eps0 n^2(r) E is normalized to
///   integral |d|^2 / (eps0 n^2) dA = 1.
class GuidedMode {
public:
    GuidedMode(const FiberSpec& fiber, const ModeId& mode, double omega,
               Orientation orientation = Orientation::Even)
        : fiber_(fiber), mode_(mode), omega_(omega), orientation_(orientation) {
        neff_ = solve_neff(fiber, mode, omega);
        const double a = fiber.radius(), k0 = omega / c0;
        n1_ = fiber.core_index(omega);
        n2_ = fiber.cladding_index;
        beta_ = neff_ * k0;
        u_ = a * k0 * std::sqrt(n1_ * n1_ - neff_ * neff_);
        w_ = a * k0 * std::sqrt(neff_ * neff_ - n2_ * n2_);
        const int nu = mode.azimuthal;

        using namespace numeric;
        switch (mode.family) {
            case ModeFamily::HE:
            case ModeFamily::EH: {
                A_ = 1.0;
                const double J = bessel_j_prime(nu, u_) / (u_ * bessel_j(nu, u_));
                const double K = bessel_k_prime(nu, w_) / (w_ * bessel_k(nu, w_));
                const double q = 1.0 / (u_ * u_) + 1.0 / (w_ * w_);
                B_ = -beta_ * nu * q * A_ / (omega * mu0 * (J + K));
                C_ = A_ * bessel_j(nu, u_) / bessel_k(nu, w_);
                D_ = B_ * bessel_j(nu, u_) / bessel_k(nu, w_);
                break;
            }
            case ModeFamily::TE: {
                A_ = 0.0;
                B_ = 1.0;
                C_ = 0.0;
                D_ = B_ * bessel_j(0, u_) / bessel_k(0, w_);
                break;
            }
            case ModeFamily::TM: {
                A_ = 1.0;
                B_ = 0.0;
                C_ = A_ * bessel_j(0, u_) / bessel_k(0, w_);
                D_ = 0.0;
                break;
            }
        }
        scale_ = 1.0;
        scale_ = 1.0 / std::sqrt(norm_integral());
        window_ = compute_window();
    }

    const ModeId& mode() const { return mode_; }
    double omega() const { return omega_; }
    double neff() const { return neff_; }
    double beta() const { return beta_; }
    Orientation orientation() const { return orientation_; }
    double core_radius() const { return fiber_.radius(); }
    double core_index() const { return n1_; }
    double cladding_index() const { return n2_; }

    double local_index(double r) const { return r < fiber_.radius() ? n1_ : n2_; }

    struct RadialField {
        double R, P, Z;
    };

    /// Normalized E-field radial profile at radius r (metres).
    RadialField radial(double r) const {
        using namespace numeric;
        const double a = fiber_.radius();
        const int nu = mode_.azimuthal;
        r = std::max(r, 1e-9 * a); // J_nu(x)/x and J'_nu stay finite in this limit
        const double ut = u_ / a, wt = w_ / a;
        RadialField out{0.0, 0.0, 0.0};
        if (r < a) {
            const double x = ut * r;
            const double Jr = bessel_j(nu, x), Jp = bessel_j_prime(nu, x);
            out.R = (beta_ * A_ * ut * Jp + omega_ * mu0 * B_ * nu * Jr / r) / (ut * ut);
            out.P = (-beta_ * A_ * nu * Jr / r - omega_ * mu0 * B_ * ut * Jp) / (ut * ut);
            out.Z = A_ * Jr;
        } else {
            const double y = wt * r;
            const double Kr = bessel_k(nu, y), Kp = bessel_k_prime(nu, y);
            out.R = -(beta_ * C_ * wt * Kp + omega_ * mu0 * D_ * nu * Kr / r) / (wt * wt);
            out.P = -(-beta_ * C_ * nu * Kr / r - omega_ * mu0 * D_ * wt * Kp) / (wt * wt);
            out.Z = C_ * Kr;
        }
        out.R *= scale_;
        out.P *= scale_;
        out.Z *= scale_;
        return out;
    }

    /// Displacement field d = eps0 n^2 E, Cartesian components, at (x, y).
    /// Phase convention: transverse components real, longitudinal imaginary.
    std::array<std::complex<double>, 3> d_field(double x, double y) const {
        const double r = std::hypot(x, y);
        const double phi = std::atan2(y, x);
        const RadialField f = radial(r);
        const int nu = mode_.azimuthal;
        double tc, ts;
        if (orientation_ == Orientation::Even) {
            tc = std::cos(nu * phi);
            ts = std::sin(nu * phi);
        } else {
            tc = std::sin(nu * phi);
            ts = -std::cos(nu * phi);
        }
        const double Er = f.R * tc;
        const double Ep = f.P * ts;
        const double Ez = f.Z * tc;
        const double cphi = std::cos(phi), sphi = std::sin(phi);
        const std::complex<double> I(0.0, 1.0);
        const double n = local_index(r);
        const double dscale = eps0 * n * n;
        return {dscale * (Er * cphi - Ep * sphi),
                dscale * (Er * sphi + Ep * cphi),
                dscale * I * Ez};
    }

    /// Re-evaluates integral |d|^2/(eps0 n^2) dA with the current scale.
    double norm_integral() const {
        const double a = fiber_.radius();
        const double azim = (mode_.azimuthal == 0) ? twopi : pi;
        auto dens = [&](double r) {
            const RadialField f = radial(r);
            const double n = local_index(r);
            return n * n * (f.R * f.R + f.P * f.P + f.Z * f.Z) * r;
        };
        const double inner = numeric::integrate_gl(dens, 0.0, a, 48, 4);
        const double tail_len = a / w_; // evanescent decay length
        double outer = 0.0;
        double r0 = a;
        for (int seg = 0; seg < 30; ++seg) {
            const double r1 = r0 + 2.0 * tail_len;
            const double part = numeric::integrate_gl(dens, r0, r1, 24, 1);
            outer += part;
            r0 = r1;
            if (part < 1e-14 * (inner + outer)) break;
        }
        return eps0 * azim * (inner + outer);
    }

    /// Half-width of a square window outside which every field component is
    /// below 1e-6 of its peak magnitude.
    double window_halfwidth() const { return window_; }

private:
    double compute_window() const {
        const double a = fiber_.radius();
        double peak = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const RadialField f = radial(3.0 * a * i / 200.0);
            peak = std::max({peak, std::abs(f.R), std::abs(f.P), std::abs(f.Z)});
        }
        double half = 3.0 * a;
        for (int iter = 0; iter < 64; ++iter) {
            const RadialField f = radial(half);
            const double edge = std::max({std::abs(f.R), std::abs(f.P), std::abs(f.Z)});
            if (edge < 1e-6 * peak) return half;
            half *= 1.25;
        }
        throw NumericalError("mode " + mode_.str() + " does not decay within the window cap");
    }

    FiberSpec fiber_;
    ModeId mode_;
    double omega_;
    Orientation orientation_;
    double neff_ = 0.0, beta_ = 0.0, u_ = 0.0, w_ = 0.0;
    double n1_ = 0.0, n2_ = 1.0;
    double A_ = 0.0, B_ = 0.0, C_ = 0.0, D_ = 0.0;
    double scale_ = 1.0;
    double window_ = 0.0;
};

struct ModeDispersion {
    ModeId mode;
    double omega0 = 0.0;
    double neff = 0.0;
    double group_index = 0.0;
    double group_velocity = 0.0; // m/s
    double beta2 = 0.0;          // s^2/m
};

struct DispersionOptions {
    double rel_step = 1e-4; // stencil step as a fraction of omega
};

/// Group index and GVD from 5-point central differences of n_eff(omega).
inline ModeDispersion dispersion_at(const FiberSpec& fiber, const ModeId& mode, double omega,
                                    const DispersionOptions& opt = {}) {
    const double dw = opt.rel_step * omega;
    std::array<double, 5> n{};
    for (int k = -2; k <= 2; ++k) {
        try {
            n[static_cast<size_t>(k + 2)] = solve_neff(fiber, mode, omega + k * dw);
        } catch (const NotGuidedError&) {
            throw NotGuidedError("dispersion stencil crosses cutoff for " + mode.str() +
                                 " near lambda = " + std::to_string(lambda_of_omega(omega) * 1e9) + " nm");
        }
    }
    const double d1 = (n[0] - 8.0 * n[1] + 8.0 * n[3] - n[4]) / (12.0 * dw);
    const double d2 = (-n[0] + 16.0 * n[1] - 30.0 * n[2] + 16.0 * n[3] - n[4]) / (12.0 * dw * dw);
    ModeDispersion out;
    out.mode = mode;
    out.omega0 = omega;
    out.neff = n[2];
    out.group_index = n[2] + omega * d1;
    out.group_velocity = c0 / out.group_index;
    out.beta2 = (2.0 * d1 + omega * d2) / c0;
    return out;
}

struct PhasematchOptions {
    int scan_points = 64;
    double neff_tol = 1e-9;
    double degenerate_tol = 1e-12;
};

struct PhasematchResult {
    double diameter = 0.0;
    double neff = 0.0;        // common effective index at the root
    double delta_lo = 0.0;    // mismatch at the bracket ends (diagnostics)
    double delta_hi = 0.0;
};

/// Finds the core diameter where the pump-mode effective index at omega_p
/// equals the fundamental-mode index at omega_s.
inline PhasematchResult find_phasematch_diameter(const material::SellmeierModel& core,
                                                 const ModeId& pump_mode, double omega_p,
                                                 const ModeId& seed_mode, double omega_s,
                                                 double d_min, double d_max,
                                                 double cladding_index = 1.0,
                                                 const PhasematchOptions& opt = {}) {
    auto mismatch = [&](double d) -> std::pair<bool, double> {
        FiberSpec fiber{d, core, cladding_index};
        try {
            return {true, solve_neff(fiber, pump_mode, omega_p) - solve_neff(fiber, seed_mode, omega_s)};
        } catch (const NotGuidedError&) {
            return {false, 0.0};
        }
    };

    std::vector<std::pair<double, double>> samples; // (d, delta_n) where both modes guided
    for (int i = 0; i <= opt.scan_points; ++i) {
        const double d = d_min + (d_max - d_min) * i / opt.scan_points;
        auto [ok, dn] = mismatch(d);
        if (ok) samples.emplace_back(d, dn);
    }
    if (samples.size() < 2)
        throw NotGuidedError("phasematch scan: modes not simultaneously guided in bracket [" +
                             std::to_string(d_min * 1e6) + ", " + std::to_string(d_max * 1e6) + "] um");

    bool all_zero = true;
    for (const auto& [d, dn] : samples)
        if (std::abs(dn) > opt.degenerate_tol) { all_zero = false; break; }
    if (all_zero)
        throw NumericalError("phasematch: mismatch vanishes across the whole bracket "
                             "(identical dispersion on both sides); diameter is not determined");

    for (size_t i = 0; i + 1 < samples.size(); ++i) {
        const auto [d0, f0] = samples[i];
        const auto [d1, f1] = samples[i + 1];
        if (f0 * f1 <= 0.0) {
            auto f = [&](double d) { return mismatch(d).second; };
            const double root = numeric::brent(f, d0, d1, f0, f1, 1e-16);
            FiberSpec fiber{root, core, cladding_index};
            PhasematchResult res;
            res.diameter = root;
            res.neff = solve_neff(fiber, seed_mode, omega_s);
            const double dn_root = solve_neff(fiber, pump_mode, omega_p) - res.neff;
            if (std::abs(dn_root) > opt.neff_tol)
                throw NumericalError("phasematch root did not converge: |delta n| = " +
                                     std::to_string(dn_root));
            res.delta_lo = samples.front().second;
            res.delta_hi = samples.back().second;
            return res;
        }
    }
    throw NumericalError("no phasematch in bracket: delta n = " +
                         std::to_string(samples.front().second) + " at " +
                         std::to_string(samples.front().first * 1e6) + " um, " +
                         std::to_string(samples.back().second) + " at " +
                         std::to_string(samples.back().first * 1e6) + " um");
}

} // namespace pairgen::modes
