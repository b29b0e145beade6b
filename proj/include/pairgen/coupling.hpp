#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <vector>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/modes.hpp"
#include "pairgen/spline.hpp"

namespace pairgen::coupling {

/// Third-order susceptibility of the core, split into the three independent
/// isotropic components as fractions of the typical magnitude chi_bar.
struct Chi3Model {
    double chi_bar = 2.5e-22; // m^2/V^2
    double c1122 = 1.0 / 3.0;
    double c1212 = 1.0 / 3.0;
    double c1221 = 1.0 / 3.0;
    double n_bar = 1.45;
};

struct EffectiveArea {
    double value = 0.0;      // |A| in m^2
    double inv_signed = 0.0; // signed overlap integral 1/A in 1/m^2
    std::array<double, 4> omegas{};
    bool warning = false;    // vanishing / negligible overlap
    int grid_used = 0;
    double convergence = 0.0; // |A(N) - A(2N)| / A(2N) of the accepted refinement
};

/// Radial profile tables for one solved mode, split at the core boundary so
/// interpolation never crosses the index step.
class SampledProfile {
public:
    explicit SampledProfile(const modes::GuidedMode& mode, int samples = 2048)
        : nu_(mode.mode().azimuthal), orientation_(mode.orientation()),
          a_(mode.core_radius()), n1_(mode.core_index()), n2_(mode.cladding_index()),
          rmax_(mode.window_halfwidth() * 1.5) {
        std::vector<double> ri, Ri, Pi, Zi;
        for (int i = 0; i <= samples; ++i) {
            const double r = a_ * i / samples;
            const auto f = mode.radial(std::min(r, a_ * (1.0 - 1e-12)));
            ri.push_back(r);
            Ri.push_back(f.R);
            Pi.push_back(f.P);
            Zi.push_back(f.Z);
        }
        in_R_ = numeric::CubicSpline(ri, Ri);
        in_P_ = numeric::CubicSpline(std::move(ri), Pi);
        std::vector<double> ri2;
        for (int i = 0; i <= samples; ++i) ri2.push_back(a_ * i / samples);
        in_Z_ = numeric::CubicSpline(std::move(ri2), Zi);

        std::vector<double> ro, Ro, Po, Zo;
        for (int i = 0; i <= samples; ++i) {
            const double r = a_ + (rmax_ - a_) * i / samples;
            const auto f = mode.radial(std::max(r, a_ * (1.0 + 1e-12)));
            ro.push_back(r);
            Ro.push_back(f.R);
            Po.push_back(f.P);
            Zo.push_back(f.Z);
        }
        out_R_ = numeric::CubicSpline(ro, Ro);
        out_P_ = numeric::CubicSpline(ro, Po);
        out_Z_ = numeric::CubicSpline(std::move(ro), Zo);
    }

    /// d-field Cartesian components at (x, y).
    std::array<std::complex<double>, 3> d_field(double x, double y) const {
        const double r = std::min(std::hypot(x, y), rmax_);
        double R, P, Z, n;
        if (r < a_) {
            R = in_R_(r); P = in_P_(r); Z = in_Z_(r); n = n1_;
        } else {
            R = out_R_(r); P = out_P_(r); Z = out_Z_(r); n = n2_;
        }
        const double phi = std::atan2(y, x);
        double tc, ts;
        if (orientation_ == modes::Orientation::Even) {
            tc = std::cos(nu_ * phi); ts = std::sin(nu_ * phi);
        } else {
            tc = std::sin(nu_ * phi); ts = -std::cos(nu_ * phi);
        }
        const double cphi = std::cos(phi), sphi = std::sin(phi);
        const double er = R * tc, ep = P * ts;
        const std::complex<double> I(0.0, 1.0);
        const double s = eps0 * n * n;
        return {s * (er * cphi - ep * sphi), s * (er * sphi + ep * cphi), s * I * Z * tc};
    }

    double core_radius() const { return a_; }
    double core_index() const { return n1_; }

private:
    int nu_;
    modes::Orientation orientation_;
    double a_, n1_, n2_, rmax_;
    numeric::CubicSpline in_R_, in_P_, in_Z_, out_R_, out_P_, out_Z_;
};

namespace detail {

inline std::complex<double> dot(const std::array<std::complex<double>, 3>& a,
                                const std::array<std::complex<double>, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline std::complex<double> cdot(const std::array<std::complex<double>, 3>& a,
                                 const std::array<std::complex<double>, 3>& b) {
    return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

/// Signed 1/A on an N x N midpoint grid over the nonlinear core region.
inline double inv_area_on_grid(const SampledProfile& m1, const SampledProfile& m2,
                               const SampledProfile& m3, const SampledProfile& m4,
                               const Chi3Model& chi, int N) {
    const double a = m1.core_radius();
    const double h = 2.0 * a / N;
    const double w1 = 2.0 * chi.c1122 + chi.c1212 + chi.c1221;
    const double w2 = chi.c1122 + 2.0 * chi.c1212 + chi.c1221;
    const double w3 = chi.c1122 + chi.c1212 + 2.0 * chi.c1221;
    const double n1sq = m1.core_index() * m1.core_index();
    const double n2sq = m2.core_index() * m2.core_index();
    const double n3sq = m3.core_index() * m3.core_index();
    const double n4sq = m4.core_index() * m4.core_index();
    const double nbar4 = chi.n_bar * chi.n_bar * chi.n_bar * chi.n_bar;
    const double pref = nbar4 / (4.0 * eps0 * eps0 * n1sq * n2sq * n3sq * n4sq);

    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < N; ++i) {
        const double x = -a + (i + 0.5) * h;
        std::complex<double> row(0.0, 0.0);
        for (int j = 0; j < N; ++j) {
            const double y = -a + (j + 0.5) * h;
            if (x * x + y * y >= a * a) continue; // chi top-hat: core only
            const auto d1 = m1.d_field(x, y);
            const auto d2 = m2.d_field(x, y);
            const auto d3 = m3.d_field(x, y);
            const auto d4 = m4.d_field(x, y);
            const std::complex<double> t1 = std::conj(dot(d1, d2)) * cdot(d3, d4);
            const std::complex<double> t2 = std::conj(dot(d1, d3)) * cdot(d2, d4);
            const std::complex<double> t3 = std::conj(dot(d2, d3)) * cdot(d1, d4);
            row += w1 * t1 + w2 * t2 + w3 * t3;
        }
        acc += row;
    }
    const std::complex<double> total = pref * acc * h * h;
    // A consistent phase convention makes the overlap real; anything else is
    // quadrature noise.
    return total.real();
}

} // namespace detail

struct AreaOptions {
    int grid = 256;
    int max_grid = 2048;
    double convergence_tol = 0.01;
    double huge_area = 1e-6; // m^2; beyond this the overlap is flagged negligible
};

/// Effective mode coupling area of the two-photon process: three
/// fundamental-band modes against one pump-band mode, isotropic-weighted
/// vector overlap. With opt.grid == opt.max_grid a single evaluation at that
/// resolution is taken; otherwise the grid refines x2 until stable.
inline EffectiveArea effective_area_sampled(const SampledProfile& s1, const SampledProfile& s2,
                                            const SampledProfile& s3, const SampledProfile& s4,
                                            const Chi3Model& chi, const AreaOptions& opt = {}) {
    EffectiveArea out;
    int N = opt.grid;
    double inv = detail::inv_area_on_grid(s1, s2, s3, s4, chi, N);
    if (opt.grid >= opt.max_grid) {
        out.inv_signed = inv;
        out.grid_used = N;
    } else {
        while (true) {
            const double inv2 = detail::inv_area_on_grid(s1, s2, s3, s4, chi, 2 * N);
            const double scale = std::max(std::abs(inv2), 1e-300);
            const double change = std::abs(inv - inv2) / scale;
            if (change < opt.convergence_tol || 2 * N >= opt.max_grid) {
                out.inv_signed = inv2;
                out.grid_used = 2 * N;
                out.convergence = change;
                break;
            }
            inv = inv2;
            N *= 2;
        }
    }
    if (std::abs(out.inv_signed) < 1.0 / opt.huge_area) {
        out.warning = true;
        out.value = (out.inv_signed == 0.0) ? std::numeric_limits<double>::infinity()
                                            : 1.0 / std::abs(out.inv_signed);
    } else {
        out.value = 1.0 / std::abs(out.inv_signed);
    }
    return out;
}

inline EffectiveArea effective_area(const modes::GuidedMode& m1, const modes::GuidedMode& m2,
                                    const modes::GuidedMode& m3, const modes::GuidedMode& m4,
                                    const Chi3Model& chi, const AreaOptions& opt = {}) {
    const SampledProfile s1(m1), s2(m2), s3(m3), s4(m4);
    EffectiveArea out = effective_area_sampled(s1, s2, s3, s4, chi, opt);
    out.omegas = {m1.omega(), m2.omega(), m3.omega(), m4.omega()};
    return out;
}

/// Nonlinear parameter of the dual-pump pair process.
inline double gamma_pair(const Chi3Model& chi, double omega_s, double vg_s, double vg_p,
                         double area) {
    if (!(vg_s > 0.0 && vg_p > 0.0 && area > 0.0))
        throw NumericalError("gamma: inputs must be positive");
    const double nbar4 = chi.n_bar * chi.n_bar * chi.n_bar * chi.n_bar;
    return 3.0 * chi.chi_bar * omega_s /
           (4.0 * eps0 * std::sqrt(vg_s * vg_s * vg_s * vg_p) * nbar4 * area);
}

/// Nonlinear parameter of the degenerate single-pump comparison process.
inline double gamma_sfwm(const Chi3Model& chi, double omega_s, double vg_s, double area_sfwm) {
    if (!(vg_s > 0.0 && area_sfwm > 0.0))
        throw NumericalError("gamma_sfwm: inputs must be positive");
    const double nbar4 = chi.n_bar * chi.n_bar * chi.n_bar * chi.n_bar;
    return 3.0 * chi.chi_bar * omega_s / (4.0 * eps0 * vg_s * vg_s * nbar4 * area_sfwm);
}

} // namespace pairgen::coupling
