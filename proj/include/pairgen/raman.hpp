#pragma once

#include <cmath>
#include <vector>

#include "pairgen/constants.hpp"
#include "pairgen/errors.hpp"
#include "pairgen/quadrature.hpp"

namespace pairgen::raman {

/// Spontaneous Raman response of amorphous silica: single damped oscillator
/// with a smooth high-frequency roll-off (the physical response has compact
/// support; the bare Lorentzian tail would leak into the far-detuned pump band).
struct RamanModel {
    double tau1 = 12.2e-15;          // oscillator period parameter, s
    double tau2 = 32e-15;            // damping time, s
    double peak_gain = 1e-13;        // m/W at the reference pump wavelength
    double ref_lambda = 1.55e-6;     // m
    double ref_area = 84.0e-12;      // m^2; area at which peak_gain is quoted
    double rolloff = 75e12;          // Hz; Gaussian envelope width
    double temperature = 300.0;      // K
};

namespace detail {

/// Imaginary part of the oscillator response at detuning Delta (Hz), with envelope.
inline double gain_shape(const RamanModel& m, double delta_hz) {
    const double a = 1.0 / m.tau2;
    const double b = 1.0 / m.tau1;
    const double om = twopi * delta_hz;
    const double cc = a * a + b * b;
    const double denom = (cc - om * om) * (cc - om * om) + 4.0 * a * a * om * om;
    const double lor = 2.0 * a * b * om / denom;
    const double env = std::exp(-(delta_hz / m.rolloff) * (delta_hz / m.rolloff));
    return lor * env;
}

} // namespace detail

/// Prepared gain curve: shape normalized by its peak, peak position cached.
class RamanCurve {
public:
    explicit RamanCurve(RamanModel model) : model_(model) {
        // Dense scan for the peak of the shape function.
        double best_x = 0.0, best_v = 0.0;
        for (int i = 1; i <= 4000; ++i) {
            const double x = 40e12 * i / 4000;
            const double v = detail::gain_shape(model_, x);
            if (v > best_v) {
                best_v = v;
                best_x = x;
            }
        }
        peak_delta_ = best_x;
        peak_shape_ = best_v;
        if (!(peak_shape_ > 0.0)) throw NumericalError("raman: degenerate gain shape");
    }

    const RamanModel& model() const { return model_; }
    double peak_delta() const { return peak_delta_; }

    /// Textbook gain magnitude |g_R(Delta)| in m/W for a given pump wavelength,
    /// without any area enhancement.
    double gain(double delta_hz, double pump_lambda) const {
        if (delta_hz < 0.0) throw NumericalError("raman gain: negative detuning");
        return model_.peak_gain * (model_.ref_lambda / pump_lambda) *
               detail::gain_shape(model_, delta_hz) / peak_shape_;
    }

    /// Area-referenced gain: larger in tighter waveguides by ref_area / area.
    double gain_scaled(double delta_hz, double area, double pump_lambda) const {
        return gain(delta_hz, pump_lambda) * (model_.ref_area / area);
    }

private:
    RamanModel model_;
    double peak_delta_ = 0.0;
    double peak_shape_ = 0.0;
};

inline double thermal_occupation(double delta_hz, double temperature) {
    if (delta_hz <= 0.0) throw NumericalError("thermal factor diverges at zero detuning");
    if (temperature <= 0.0) return 0.0;
    const double x = h_planck * delta_hz / (k_boltz * temperature);
    if (x > 700.0) return 0.0;
    return 1.0 / std::expm1(x);
}

/// Spontaneous Raman photon flux through a filter of width filter_hz centred
/// at detuning delta_hz from the field of power P (the spectrally adjacent
/// field: the seed for the dual-pump process, the single pump for the
/// comparison process). rho = 1 on the Stokes side, 0 on the anti-Stokes side.
inline double raman_flux(const RamanCurve& curve, double filter_hz, double power, double L,
                         double delta_hz, double area, bool stokes, double pump_lambda) {
    const double rho = stokes ? 1.0 : 0.0;
    const double nth = thermal_occupation(delta_hz, curve.model().temperature);
    return filter_hz * power * L * curve.gain(delta_hz, pump_lambda) * (rho + nth) / area;
}

/// Flux per unit filter bandwidth (photons/s/Hz).
inline double raman_density(const RamanCurve& curve, double power, double L, double delta_hz,
                            double area, bool stokes, double pump_lambda) {
    return raman_flux(curve, 1.0, power, L, delta_hz, area, stokes, pump_lambda);
}

// The sinc arguments below follow the printed convention of the spectral
// density formulas: the first null sits at Delta = 1/(beta2 L).

/// Pair spectral density of the single-pump comparison process (photons/s/Hz).
inline double sfwm_density(double gamma_sfwm, double p_single, double L, double beta2_sfwm,
                           double delta_hz) {
    const double amp = gamma_sfwm * p_single * L;
    const double s = numeric::sinc(pi * beta2_sfwm * L * delta_hz);
    return amp * amp * s * s;
}

/// Pair spectral density of the dual-pump process (photons/s/Hz).
inline double sstpdc_density(double gamma, double p_pump, double p_seed, double L,
                             double beta2_seed, double delta_hz) {
    const double amp = gamma * std::sqrt(p_pump * p_seed) * L;
    const double s = numeric::sinc(pi * beta2_seed * L * delta_hz);
    return 4.0 * amp * amp * s * s;
}

struct FigureOfMerit {
    double approx = 0.0; // closed-form area/power ratio
    double exact = 0.0;  // recomputed from the density and flux operations
};

/// SNR improvement of the dual-pump process over the single-pump baseline.
/// p_single defaults to sqrt(Pp Ps) when passed as <= 0.
inline FigureOfMerit figure_of_merit(const RamanCurve& curve, double area, double area_sfwm,
                                     double p_pump, double p_seed, double gamma, double g_sfwm,
                                     double L, double beta2_seed, double beta2_sfwm,
                                     double delta_hz, double seed_lambda,
                                     double p_single = 0.0) {
    if (p_single <= 0.0) p_single = std::sqrt(p_pump * p_seed);
    FigureOfMerit fom;
    fom.approx = 4.0 * (area_sfwm / area) * std::sqrt(p_pump / p_seed);
    const double sig_dual = sstpdc_density(gamma, p_pump, p_seed, L, beta2_seed, delta_hz);
    const double sig_single = sfwm_density(g_sfwm, p_single, L, beta2_sfwm, delta_hz);
    const double noise_dual = raman_density(curve, p_seed, L, delta_hz, area, true, seed_lambda);
    const double noise_single =
        raman_density(curve, p_single, L, delta_hz, area_sfwm, true, seed_lambda);
    fom.exact = (sig_dual / noise_dual) / (sig_single / noise_single);
    return fom;
}

struct NoisePoint {
    double p_seed = 0.0;       // W
    double delta_hz = 0.0;     // detuning from the seed
    double sfwm_signal = 0.0;  // photons/s/Hz
    double sstpdc_signal = 0.0;
    double raman_sfwm = 0.0;   // Stokes-side spontaneous Raman densities
    double raman_sstpdc = 0.0;
    double raman_sfwm_antistokes = 0.0;
    double raman_sstpdc_antistokes = 0.0;
    double snr_sfwm = 0.0; // worse (Stokes) channel
    double snr_sstpdc = 0.0;
    double fom = 0.0;
};

struct NoiseSweepInputs {
    double gamma = 0.0;
    double gamma_sfwm = 0.0;
    double area = 0.0;
    double area_sfwm = 0.0;
    double p_pump = 0.0;
    double L = 0.0;
    double beta2_seed = 0.0;
    double beta2_sfwm = 0.0;
    double seed_lambda = 0.0;
    double p_single = 0.0; // <= 0: sqrt(Pp Ps) per point
};

/// Tabulates signal/noise densities, SNRs and the figure of merit over a
/// (seed power, detuning) grid.
inline std::vector<NoisePoint> noise_sweep(const RamanCurve& curve, const NoiseSweepInputs& in,
                                           const std::vector<double>& seed_powers,
                                           const std::vector<double>& deltas_hz) {
    std::vector<NoisePoint> rows;
    rows.reserve(seed_powers.size() * deltas_hz.size());
    for (const double ps : seed_powers) {
        const double psingle = in.p_single > 0.0 ? in.p_single : std::sqrt(in.p_pump * ps);
        for (const double d : deltas_hz) {
            NoisePoint pt;
            pt.p_seed = ps;
            pt.delta_hz = d;
            pt.sstpdc_signal = sstpdc_density(in.gamma, in.p_pump, ps, in.L, in.beta2_seed, d);
            pt.sfwm_signal = sfwm_density(in.gamma_sfwm, psingle, in.L, in.beta2_sfwm, d);
            pt.raman_sstpdc = raman_density(curve, ps, in.L, d, in.area, true, in.seed_lambda);
            pt.raman_sfwm = raman_density(curve, psingle, in.L, d, in.area_sfwm, true, in.seed_lambda);
            pt.raman_sstpdc_antistokes =
                raman_density(curve, ps, in.L, d, in.area, false, in.seed_lambda);
            pt.raman_sfwm_antistokes =
                raman_density(curve, psingle, in.L, d, in.area_sfwm, false, in.seed_lambda);
            pt.snr_sstpdc = pt.sstpdc_signal / pt.raman_sstpdc;
            pt.snr_sfwm = pt.sfwm_signal / pt.raman_sfwm;
            pt.fom = 4.0 * (in.area_sfwm / in.area) * std::sqrt(in.p_pump / ps);
            rows.push_back(pt);
        }
    }
    return rows;
}

} // namespace pairgen::raman
