#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "pairgen/constants.hpp"
#include "pairgen/coupling.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/modes.hpp"
#include "pairgen/quadrature.hpp"
#include "pairgen/spline.hpp"
#include "pairgen/threading.hpp"

namespace pairgen::jsa {

enum class PulseRole { Pump, Seed };

struct PulseSpec {
    PulseRole role = PulseRole::Seed;
    double lambda0 = 0.0; // m
    double tau = 0.0;     // s
    double power = 0.0;   // W, nominal pulse power

    double omega0() const { return omega_of_lambda(lambda0); }
    double photon_number() const { return power * tau / (hbar * omega0()); }
};

/// Transform-limited Gaussian spectral amplitude, unit L2 norm in omega.
inline double spectral_profile(const PulseSpec& p, double omega) {
    const double d = omega - p.omega0();
    return std::sqrt(p.tau) / std::pow(pi, 0.25) * std::exp(-0.5 * p.tau * p.tau * d * d);
}

/// n_eff interpolation tables for the two frequency bands entering the pair
/// process. The pump-band table may come from a different guided branch than
/// the phasematched pump mode; its propagation constant is then re-anchored at
/// the band center so the designed phasematch is preserved and only the
/// branch's walk-off and curvature enter.
struct DispersionTables {
    numeric::CubicSpline neff_seed;
    numeric::CubicSpline neff_pump;
    double omega_s = 0.0;
    double omega_p = 0.0;
    double k_pump_center = 0.0;   // design k at omega_p (phasematched pump mode)
    double k_branch_center = 0.0; // raw branch k at omega_p
    double beta2_seed = 0.0;      // s^2/m, exact-stencil value at omega_s
    double beta2_scale = 1.0;

    double k_seed(double w) const {
        double k = neff_seed(w) * w / c0;
        if (beta2_scale != 1.0) {
            const double d = w - omega_s;
            k += (beta2_scale - 1.0) * 0.5 * beta2_seed * d * d;
        }
        return k;
    }
    double k_pump(double w) const {
        return k_pump_center + (neff_pump(w) * w / c0 - k_branch_center);
    }
    double vg_seed(double w) const {
        return c0 / (neff_seed(w) + w * neff_seed.derivative(w));
    }
    double vg_pump(double w) const {
        return c0 / (neff_pump(w) + w * neff_pump.derivative(w));
    }
};

struct DispersionTableOptions {
    int seed_nodes = 96;
    int pump_nodes = 128;
    double margin = 1.35; // table half-width as a multiple of the grid span
};

/// Builds both band tables from a mode solver. `branch` selects the pump-band
/// dispersion branch; `pump_mode` fixes the phasematch anchor.
inline DispersionTables build_dispersion_tables(const modes::ModeSolver& solver,
                                                const modes::ModeId& seed_mode,
                                                const modes::ModeId& pump_mode,
                                                const modes::ModeId& branch,
                                                double omega_s, double span,
                                                const DispersionTableOptions& opt = {}) {
    DispersionTables t;
    t.omega_s = omega_s;
    t.omega_p = 3.0 * omega_s;

    const double half_s = opt.margin * span;
    std::vector<double> xs, ys;
    for (int i = 0; i < opt.seed_nodes; ++i) {
        const double w = omega_s - half_s + 2.0 * half_s * i / (opt.seed_nodes - 1);
        xs.push_back(w);
        ys.push_back(solver.neff(seed_mode, w));
    }
    t.neff_seed = numeric::CubicSpline(std::move(xs), std::move(ys));

    const double half_p = opt.margin * 2.0 * span + 0.02 * t.omega_p / 100.0;
    std::vector<double> xp, yp;
    for (int i = 0; i < opt.pump_nodes; ++i) {
        const double w = t.omega_p - half_p + 2.0 * half_p * i / (opt.pump_nodes - 1);
        xp.push_back(w);
        yp.push_back(solver.neff(branch, w));
    }
    t.neff_pump = numeric::CubicSpline(std::move(xp), std::move(yp));

    t.k_branch_center = solver.neff(branch, t.omega_p) * t.omega_p / c0;
    t.k_pump_center = solver.neff(pump_mode, t.omega_p) * t.omega_p / c0;
    t.beta2_seed = modes::dispersion_at(solver.fiber(), seed_mode, omega_s).beta2;
    return t;
}

/// Delta k = k4 - k3 - k2 - k1 with (1,2,3) on the seed band and 4 on the pump band.
inline double phase_mismatch(double w1, double w2, double w3, double w4,
                             const DispersionTables& t) {
    return t.k_pump(w4) - t.k_seed(w3) - t.k_seed(w2) - t.k_seed(w1);
}

/// Fourier factor of a unit top-hat nonlinearity profile of length L centred
/// at z = 0: real and even.
inline double phasematch_factor(double dk, double L) {
    return L * numeric::sinc(0.5 * dk * L);
}

/// Signed inverse effective area across the outer grid, bilinear between
/// precomputed nodes.
struct AreaMap {
    bool constant = true;
    double inv0 = 0.0;
    std::vector<double> ax1, ax2;
    Eigen::MatrixXd inv;

    static AreaMap uniform(double inv_signed) {
        AreaMap m;
        m.constant = true;
        m.inv0 = inv_signed;
        return m;
    }
    static AreaMap bilinear(std::vector<double> a1, std::vector<double> a2, Eigen::MatrixXd values) {
        AreaMap m;
        m.constant = false;
        m.ax1 = std::move(a1);
        m.ax2 = std::move(a2);
        m.inv = std::move(values);
        return m;
    }

    double at(double w1, double w2) const {
        if (constant) return inv0;
        auto clampi = [](const std::vector<double>& ax, double x, double& frac) {
            size_t i = static_cast<size_t>(std::upper_bound(ax.begin(), ax.end(), x) - ax.begin());
            if (i > 0) --i;
            if (i + 1 >= ax.size()) i = ax.size() - 2;
            frac = std::clamp((x - ax[i]) / (ax[i + 1] - ax[i]), 0.0, 1.0);
            return i;
        };
        double fx, fy;
        const size_t i = clampi(ax1, w1, fx);
        const size_t j = clampi(ax2, w2, fy);
        const double v00 = inv(i, j), v10 = inv(i + 1, j), v01 = inv(i, j + 1), v11 = inv(i + 1, j + 1);
        return (1 - fx) * (1 - fy) * v00 + fx * (1 - fy) * v10 + (1 - fx) * fy * v01 + fx * fy * v11;
    }
};

struct JsaGrid {
    std::vector<double> omega1, omega2; // rad/s axes
    std::vector<double> w1, w2;         // trapezoid weights, rad/s
    Eigen::MatrixXcd amplitude;         // normalized: sum w w |Phi|^2 = 1
    double eta2 = 0.0;                  // pair probability per pulse
};

struct JsaParams {
    PulseSpec pump;
    PulseSpec seed;
    double length = 0.0; // m
    coupling::Chi3Model chi;
    AreaMap area;
    int n1 = 1024;
    int n2 = 1024;
    double span = twopi * 6e12; // rad/s half-width of each axis
    int inner_points = 64;
    bool frozen_factors = false;
    int threads = 0;
    double boundary_band = 0.05;   // fraction of each axis counted as boundary
    double boundary_tol = 1e-3;    // max probability mass allowed in the band
};

/// Full numerical joint spectral amplitude on the outer grid, with the seed
/// integrated out on a Gauss-Legendre rule. Returns a grid normalized to unit
/// total probability and the pair probability eta^2.
inline JsaGrid compute_jsa(const JsaParams& prm, const DispersionTables& tables) {
    if (prm.n1 < 64 || prm.n2 < 64) throw ConfigError("jsa grid sizes must be >= 64");
    const double ws = prm.seed.omega0();
    const double wp = prm.pump.omega0();
    const double L = prm.length;

    JsaGrid grid;
    grid.omega1.resize(prm.n1);
    grid.omega2.resize(prm.n2);
    for (int i = 0; i < prm.n1; ++i)
        grid.omega1[i] = ws - prm.span + 2.0 * prm.span * i / (prm.n1 - 1);
    for (int j = 0; j < prm.n2; ++j)
        grid.omega2[j] = ws - prm.span + 2.0 * prm.span * j / (prm.n2 - 1);
    grid.w1 = numeric::trapezoid_weights(prm.n1, 2.0 * prm.span / (prm.n1 - 1));
    grid.w2 = numeric::trapezoid_weights(prm.n2, 2.0 * prm.span / (prm.n2 - 1));

    // Seed spectrum support: +-6/tau_s around the seed carrier.
    const double seed_half = 6.0 / prm.seed.tau;
    const auto gl = numeric::gauss_legendre(static_cast<size_t>(prm.inner_points),
                                            ws - seed_half, ws + seed_half);
    const int M = prm.inner_points;
    std::vector<double> phi_s(M), vg3(M), k3(M);
    for (int k = 0; k < M; ++k) {
        phi_s[k] = spectral_profile(prm.seed, gl.nodes[k]);
        vg3[k] = tables.vg_seed(gl.nodes[k]);
        k3[k] = tables.k_seed(gl.nodes[k]);
    }

    std::vector<double> k1(prm.n1), vg1(prm.n1), k2(prm.n2), vg2(prm.n2);
    for (int i = 0; i < prm.n1; ++i) {
        k1[i] = tables.k_seed(grid.omega1[i]);
        vg1[i] = tables.vg_seed(grid.omega1[i]);
    }
    for (int j = 0; j < prm.n2; ++j) {
        k2[j] = tables.k_seed(grid.omega2[j]);
        vg2[j] = tables.vg_seed(grid.omega2[j]);
    }

    const double alpha = std::sqrt(prm.seed.photon_number());
    const double beta = std::sqrt(prm.pump.photon_number());
    const double nbar4 = std::pow(prm.chi.n_bar, 4);
    const std::complex<double> pref =
        std::complex<double>(0.0, 1.0) * 3.0 * std::sqrt(2.0) * alpha * beta * hbar *
        prm.chi.chi_bar / (8.0 * pi * eps0 * nbar4);

    const double tau_p = prm.pump.tau;
    const double phi_p_amp = std::sqrt(tau_p) / std::pow(pi, 0.25);

    Eigen::MatrixXcd amp(prm.n1, prm.n2);

    numeric::parallel_for_rows(static_cast<size_t>(prm.n1), prm.threads, [&](size_t ib, size_t ie) {
        for (size_t i = ib; i < ie; ++i) {
            const double W1 = grid.omega1[i];
            for (int j = 0; j < prm.n2; ++j) {
                const double W2 = grid.omega2[j];
                const double base = W1 + W2;
                double acc = 0.0;
                if (prm.frozen_factors) {
                    const double w4c = base + ws;
                    const double dk_c = tables.k_pump(w4c) - tables.k_seed(ws) - k2[j] - k1[i];
                    const double S = std::sqrt(W1 * W2 * ws * w4c /
                                               (vg1[i] * vg2[j] * tables.vg_seed(ws) * tables.vg_pump(w4c)));
                    const double fac = S * phasematch_factor(dk_c, L) * prm.area.at(W1, W2);
                    double g = 0.0;
                    for (int k = 0; k < M; ++k) {
                        const double w4 = base + gl.nodes[k];
                        const double dp = w4 - wp;
                        g += gl.weights[k] * phi_s[k] * phi_p_amp * std::exp(-0.5 * tau_p * tau_p * dp * dp);
                    }
                    acc = fac * g;
                } else {
                    const double inv_area = prm.area.at(W1, W2);
                    for (int k = 0; k < M; ++k) {
                        const double w3 = gl.nodes[k];
                        const double w4 = base + w3;
                        const double dk = tables.k_pump(w4) - k3[k] - k2[j] - k1[i];
                        const double S = std::sqrt(W1 * W2 * w3 * w4 /
                                                   (vg1[i] * vg2[j] * vg3[k] * tables.vg_pump(w4)));
                        const double dp = w4 - wp;
                        const double phi_p = phi_p_amp * std::exp(-0.5 * tau_p * tau_p * dp * dp);
                        acc += gl.weights[k] * S * phasematch_factor(dk, L) * inv_area * phi_s[k] * phi_p;
                    }
                }
                amp(static_cast<Eigen::Index>(i), j) = pref * acc;
            }
        }
    });

    // Serial reduction in fixed index order keeps eta2 independent of threading.
    double eta2 = 0.0;
    for (int i = 0; i < prm.n1; ++i) {
        double row = 0.0;
        for (int j = 0; j < prm.n2; ++j) row += grid.w2[j] * std::norm(amp(i, j));
        eta2 += grid.w1[i] * row;
    }
    grid.eta2 = eta2;

    if (eta2 > 0.0) {
        amp /= std::sqrt(eta2);
        // Truncation guard: probability mass in the outer band of the grid.
        const int b1 = std::max(1, static_cast<int>(prm.boundary_band * prm.n1));
        const int b2 = std::max(1, static_cast<int>(prm.boundary_band * prm.n2));
        double band = 0.0;
        for (int i = 0; i < prm.n1; ++i)
            for (int j = 0; j < prm.n2; ++j)
                if (i < b1 || i >= prm.n1 - b1 || j < b2 || j >= prm.n2 - b2)
                    band += grid.w1[i] * grid.w2[j] * std::norm(amp(i, j));
        if (band > prm.boundary_tol) {
            const double suggest = prm.span * 1.5 / twopi / 1e12;
            throw GridTruncationError(
                "grid truncation: " + std::to_string(band * 100.0) +
                "% of the pair probability sits in the outer grid band; increase grid.span to >= " +
                std::to_string(suggest) + " THz");
        }
    }
    grid.amplitude = std::move(amp);
    if (eta2 > 0.5)
        throw NumericalError("eta^2 = " + std::to_string(eta2) +
                             " > 0.5: first-order treatment invalid");
    return grid;
}

/// Closed-form long-pulse estimate of the pair probability.
inline double pair_probability_closed_form(double gamma, double L, double tau_s, double tau_p,
                                           double beta2_s, double P_p, double P_s) {
    if (beta2_s == 0.0)
        throw NumericalError("closed-form rate diverges for beta2 = 0");
    const double root = std::sqrt(2.0 * tau_s * tau_s * tau_p * tau_p /
                                  (std::abs(beta2_s) * L * (tau_s * tau_s + tau_p * tau_p)));
    return 4.0 * gamma * gamma * L * L / (3.0 * pi) * root * P_p * P_s;
}

inline void require_normalized(const JsaGrid& grid, double tol = 1e-6) {
    double total = 0.0;
    for (size_t i = 0; i < grid.omega1.size(); ++i)
        for (size_t j = 0; j < grid.omega2.size(); ++j)
            total += grid.w1[i] * grid.w2[j] * std::norm(grid.amplitude(static_cast<Eigen::Index>(i),
                                                                        static_cast<Eigen::Index>(j)));
    if (std::abs(total - 1.0) > tol)
        throw NumericalError("JSA grid is not normalized: integral = " + std::to_string(total));
}

/// Schmidt number from the singular values of the weighted amplitude matrix
/// (computed as eigenvalues of M^dagger M, which are the squared singular values).
inline double schmidt_number(const JsaGrid& grid) {
    require_normalized(grid);
    const Eigen::Index n1 = grid.amplitude.rows(), n2 = grid.amplitude.cols();
    Eigen::MatrixXcd M(n1, n2);
    for (Eigen::Index i = 0; i < n1; ++i)
        for (Eigen::Index j = 0; j < n2; ++j)
            M(i, j) = std::sqrt(grid.w1[static_cast<size_t>(i)]) * grid.amplitude(i, j) *
                      std::sqrt(grid.w2[static_cast<size_t>(j)]);
    Eigen::MatrixXcd H = M.adjoint() * M;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd ev = es.eigenvalues();
    double sum = 0.0, sum2 = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
        const double lam = std::max(ev[k], 0.0);
        sum += lam;
        sum2 += lam * lam;
    }
    if (sum <= 0.0) throw NumericalError("schmidt: empty amplitude");
    return sum * sum / sum2;
}

inline double g2_zero(double schmidt_k) {
    if (schmidt_k < 1.0) throw NumericalError("schmidt number must be >= 1");
    return 1.0 + 1.0 / schmidt_k;
}

/// FWHM of the omega1 marginal intensity, in ordinary frequency (Hz).
inline double generation_bandwidth(const JsaGrid& grid) {
    require_normalized(grid);
    const size_t n1 = grid.omega1.size();
    std::vector<double> rho(n1, 0.0);
    for (size_t i = 0; i < n1; ++i) {
        double s = 0.0;
        for (size_t j = 0; j < grid.omega2.size(); ++j)
            s += grid.w2[j] * std::norm(grid.amplitude(static_cast<Eigen::Index>(i),
                                                       static_cast<Eigen::Index>(j)));
        rho[i] = s;
    }
    const double peak = *std::max_element(rho.begin(), rho.end());
    if (peak <= 0.0) throw NumericalError("bandwidth: empty marginal");
    const double half = 0.5 * peak;
    if (rho.front() >= half || rho.back() >= half)
        throw NumericalError("bandwidth: marginal does not drop below half max inside the grid");
    size_t lo = 0;
    while (rho[lo] < half) ++lo;
    size_t hi = n1 - 1;
    while (rho[hi] < half) --hi;
    auto cross = [&](size_t below, size_t above) {
        const double f = (half - rho[below]) / (rho[above] - rho[below]);
        return grid.omega1[below] + f * (grid.omega1[above] - grid.omega1[below]);
    };
    const double w_lo = cross(lo - 1, lo);
    const double w_hi = cross(hi + 1, hi);
    return (w_hi - w_lo) / twopi;
}

} // namespace pairgen::jsa
