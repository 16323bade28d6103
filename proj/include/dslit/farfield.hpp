#pragma once

// Kirchhoff far-field amplitudes of the two slits and the resulting
// relative intensity over a detector angle scan.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "slit_modes.hpp"

namespace dslit {

/// Half-width (in units of q*L) of the window around q = +-p*pi/L where the
/// closed form is 0/0 and the analytic limit is returned instead.
inline constexpr double kSingularWindow = 1e-8;

struct DirectionAngles {
    double alpha = 0.0;
    double beta = 0.0;

    bool valid() const { return direction_is_valid(alpha, beta); }
};

struct ComplexAmplitude {
    complex value;
    DirectionAngles angles;
};

namespace detail {

inline void require_odd(int p, const char* who) {
    if (p < 1 || p % 2 == 0)
        throw std::invalid_argument(std::string(who) + ": order must be a positive odd integer");
}

} // namespace detail

/**
 * Closed form of  integral_0^L exp(-i q y) sin(p pi y / L) dy  for odd p.
 *
 * The poles at q = +-p pi/L are removable; inside the window the limits
 * -iL/2 (at +p pi/L) and +iL/2 (at -p pi/L) are returned, and near them the
 * expression is rewritten in terms of the offset from the pole to avoid
 * cancellation.
 */
inline complex sine_fourier_integral(int p, double q, double L) {
    detail::require_odd(p, "sine_fourier_integral");
    if (!(L > 0)) throw std::invalid_argument("sine_fourier_integral: L must be > 0");

    const double kp = p * std::numbers::pi / L;
    const double above = q - kp; // offset from +kp
    const double below = q + kp; // offset from -kp
    if (std::abs(above) * L < kSingularWindow) return {0.0, -0.5 * L};
    if (std::abs(below) * L < kSingularWindow) return {0.0, 0.5 * L};

    // 1 + exp(-iqL) = 2i sin(dL/2) exp(-i dL/2) when q = +-kp + d and p is odd.
    auto near_pole = [&](double d) {
        return complex(0.0, 2.0 * std::sin(0.5 * d * L)) * std::polar(1.0, -0.5 * d * L);
    };
    if (std::abs(above) * L < 1.0)
        return kp * near_pole(above) / (-above * (2.0 * kp + above));
    if (std::abs(below) * L < 1.0)
        return kp * near_pole(below) / (below * (2.0 * kp - below));

    const double half = 0.5 * q * L;
    return kp * 2.0 * std::cos(half) * std::polar(1.0, -half) / ((kp - q) * (kp + q));
}

/**
 * integral_s^{s+L} exp(-i q y) sin(p pi (y - s) / L) dy, evaluated from the
 * antiderivative at both bounds rather than by translating the s = 0 result.
 */
inline complex shifted_sine_fourier_integral(int p, double q, double L, double s) {
    detail::require_odd(p, "shifted_sine_fourier_integral");
    if (!(L > 0)) throw std::invalid_argument("shifted_sine_fourier_integral: L must be > 0");

    const double kp = p * std::numbers::pi / L;
    if (std::abs(q - kp) * L < kSingularWindow) return std::polar(1.0, -q * s) * complex(0.0, -0.5 * L);
    if (std::abs(q + kp) * L < kSingularWindow) return std::polar(1.0, -q * s) * complex(0.0, 0.5 * L);

    // Near a pole both bound terms nearly cancel; with q = +-kp + d their sum
    // exp(-iqs) kp (1 + exp(-iqL)) has the common factor 2i sin(dL/2) exp(-idL/2).
    auto near_pole = [&](double d) {
        return std::polar(1.0, -q * s) * complex(0.0, 2.0 * std::sin(0.5 * d * L)) *
               std::polar(1.0, -0.5 * d * L);
    };
    if (std::abs(q - kp) * L < 1.0) return kp * near_pole(q - kp) / (-(q - kp) * (kp + q));
    if (std::abs(q + kp) * L < 1.0) return kp * near_pole(q + kp) / ((q + kp) * (kp - q));

    // F(y) = -exp(-iqy) [iq sin(u) + kp cos(u)] / (kp^2 - q^2), u = kp (y - s);
    // at the bounds u = 0 and u = p pi, where sin vanishes and cos = 1, (-1)^p.
    const double parity = p % 2 == 0 ? 1.0 : -1.0;
    const complex upper = -std::polar(1.0, -q * (s + L)) * (kp * parity);
    const complex lower = -std::polar(1.0, -q * s) * kp;
    return (upper - lower) / ((kp - q) * (kp + q));
}

/// i k_z + (i k - 1/R) sqrt(cos^2 alpha - sin^2 beta).
inline complex obliquity_prefactor(const ModeTerm& term, DirectionAngles angles, double k, double R) {
    const double ca = std::cos(angles.alpha), sb = std::sin(angles.beta);
    const double cos_theta_sq = ca * ca - sb * sb;
    if (!(cos_theta_sq > 0))
        throw DomainError("obliquity_prefactor: direction outside the forward hemisphere");
    return complex(0.0, 1.0) * term.k_z + complex(-1.0 / R, k) * std::sqrt(cos_theta_sq);
}

namespace detail {

inline void require_direction(DirectionAngles angles) {
    if (!angles.valid()) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "invalid direction: alpha = %.17g, beta = %.17g", angles.alpha,
                      angles.beta);
        throw DomainError(buf);
    }
}

/// -exp(ikR)/(4 pi R) exp(-iEt/hbar), common to both slits.
inline complex far_field_envelope(const SimConfig& cfg) {
    const double k = wavenumber(cfg);
    const double R = cfg.detector.distance_R;
    const double energy_phase = -cfg.beam.energy * cfg.evaluation_time / cfg.constants.hbar;
    return -std::polar(1.0 / (4.0 * std::numbers::pi * R), k * R) * std::polar(1.0, energy_phase);
}

} // namespace detail

/**
 * Per-mode evaluation of the first slit's far-field amplitude.
 *
 * This is the literal mode-by-mode sum; FarFieldModel below is the
 * factored form used for scans.
 */
inline ComplexAmplitude slit1_amplitude(DirectionAngles angles, const SimConfig& cfg,
                                        const ModeSet& modes) {
    detail::require_direction(angles);
    const double k = wavenumber(cfg);
    const double R = cfg.detector.distance_R;
    const double qx = k * std::sin(angles.alpha);
    const double qy = k * std::sin(angles.beta);
    complex sum{0.0, 0.0};
    for (const auto& mode : modes.modes) {
        sum += mode.coefficient * thickness_attenuation(mode.k_z, cfg.slits.thickness_c) *
               obliquity_prefactor(mode, angles, k, R) *
               sine_fourier_integral(mode.index.x_order(), qx, cfg.slits.length_b) *
               sine_fourier_integral(mode.index.y_order(), qy, cfg.slits.width_a);
    }
    return {detail::far_field_envelope(cfg) * sum, angles};
}

inline ComplexAmplitude slit1_amplitude(DirectionAngles angles, const SimConfig& cfg) {
    return slit1_amplitude(angles, cfg, enumerate_modes(cfg));
}

/// Second slit: the y' integral runs over [a+d, 2a+d] against the translated sine.
inline ComplexAmplitude slit2_amplitude(DirectionAngles angles, const SimConfig& cfg,
                                        const ModeSet& modes) {
    detail::require_direction(angles);
    const double k = wavenumber(cfg);
    const double R = cfg.detector.distance_R;
    const double qx = k * std::sin(angles.alpha);
    const double qy = k * std::sin(angles.beta);
    const double shift = cfg.slits.width_a + cfg.slits.separation_d;
    complex sum{0.0, 0.0};
    for (const auto& mode : modes.modes) {
        sum += mode.coefficient * thickness_attenuation(mode.k_z, cfg.slits.thickness_c) *
               obliquity_prefactor(mode, angles, k, R) *
               sine_fourier_integral(mode.index.x_order(), qx, cfg.slits.length_b) *
               shifted_sine_fourier_integral(mode.index.y_order(), qy, cfg.slits.width_a, shift);
    }
    return {detail::far_field_envelope(cfg) * sum, angles};
}

inline ComplexAmplitude slit2_amplitude(DirectionAngles angles, const SimConfig& cfg) {
    return slit2_amplitude(angles, cfg, enumerate_modes(cfg));
}

/// 4 cos^2(k sin(beta) (a+d) / 2).
inline double two_slit_factor(double beta, const SimConfig& cfg) {
    const double half_phase =
        0.5 * wavenumber(cfg) * std::sin(beta) * (cfg.slits.width_a + cfg.slits.separation_d);
    const double c = std::cos(half_phase);
    return 4.0 * c * c;
}

/**
 * Scan engine for one configuration.
 *
 * With alpha fixed, the x' integrals and the per-mode weights fold into two
 * sums per transverse y-order, so each detector angle costs O(#y-orders).
 * Everything is computed in the constructor; evaluation is const and
 * thread-safe.
 */
class FarFieldModel {
public:
    explicit FarFieldModel(const SimConfig& cfg) : FarFieldModel(cfg, enumerate_modes(cfg)) {}

    FarFieldModel(const SimConfig& cfg, ModeSet modes)
        : cfg_(cfg), modes_(std::move(modes)), k_(wavenumber(cfg)),
          envelope_(detail::far_field_envelope(cfg)) {
        const double qx = k_ * std::sin(cfg.beam.alpha);
        std::map<int, int> slot_of_m;
        std::map<int, complex> x_integral;
        for (const auto& mode : modes_.modes) {
            auto [it, inserted] = slot_of_m.try_emplace(mode.index.m, static_cast<int>(orders_.size()));
            if (inserted) {
                orders_.push_back(mode.index.y_order());
                axial_sum_.emplace_back(0.0, 0.0);
                plain_sum_.emplace_back(0.0, 0.0);
            }
            auto xi = x_integral.find(mode.index.n);
            if (xi == x_integral.end())
                xi = x_integral
                         .emplace(mode.index.n, sine_fourier_integral(mode.index.x_order(), qx,
                                                                      cfg.slits.length_b))
                         .first;
            const complex weight =
                mode.coefficient * thickness_attenuation(mode.k_z, cfg.slits.thickness_c) * xi->second;
            axial_sum_[it->second] += complex(0.0, 1.0) * mode.k_z * weight;
            plain_sum_[it->second] += weight;
        }
    }

    const SimConfig& config() const noexcept { return cfg_; }
    const ModeSet& modes() const noexcept { return modes_; }

    complex slit1(double beta) const { return evaluate(beta, 0.0, false); }

    complex slit2(double beta) const {
        return evaluate(beta, cfg_.slits.width_a + cfg_.slits.separation_d, true);
    }

private:
    complex evaluate(double beta, double shift, bool shifted) const {
        const DirectionAngles angles{cfg_.beam.alpha, beta};
        detail::require_direction(angles);
        const double ca = std::cos(angles.alpha), sb = std::sin(beta);
        const complex oblique =
            complex(-1.0 / cfg_.detector.distance_R, k_) * std::sqrt(ca * ca - sb * sb);
        const double qy = k_ * sb;
        complex sum{0.0, 0.0};
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            const complex y_integral =
                shifted ? shifted_sine_fourier_integral(orders_[i], qy, cfg_.slits.width_a, shift)
                        : sine_fourier_integral(orders_[i], qy, cfg_.slits.width_a);
            sum += y_integral * (axial_sum_[i] + oblique * plain_sum_[i]);
        }
        return envelope_ * sum;
    }

    SimConfig cfg_;
    ModeSet modes_;
    double k_;
    complex envelope_;
    std::vector<int> orders_;        // distinct y-orders 2m+1
    std::vector<complex> axial_sum_; // sum_n D att (i k_z) X_n per y-order
    std::vector<complex> plain_sum_; // sum_n D att X_n per y-order
};

/// |psi_1 + psi_2|^2 at one direction.
inline double total_intensity(DirectionAngles angles, const SimConfig& cfg) {
    const ModeSet modes = enumerate_modes(cfg);
    return std::norm(slit1_amplitude(angles, cfg, modes).value + slit2_amplitude(angles, cfg, modes).value);
}

struct ScanRow {
    double beta = 0.0;
    double intensity_total = 0.0;
    double intensity_slit1 = 0.0;
    double two_slit_factor = 0.0;
    double intensity_normalized = 0.0;
};

struct DiffractionScan {
    SimConfig config_echo;
    std::vector<ScanRow> rows;
    bool truncation_overflow = false;
};

/// Evaluate the pattern on the detector grid of `cfg`.
inline DiffractionScan scan(const SimConfig& cfg) {
    validate(cfg);
    const FarFieldModel model(cfg);
    DiffractionScan out;
    out.config_echo = cfg;
    out.truncation_overflow = model.modes().truncation_overflow;

    const auto grid = beta_grid(cfg.detector);
    out.rows.reserve(grid.size());
    double peak = 0.0;
    for (double beta : grid) {
        const complex psi1 = model.slit1(beta);
        const complex psi2 = model.slit2(beta);
        ScanRow row;
        row.beta = beta;
        row.intensity_total = std::norm(psi1 + psi2);
        row.intensity_slit1 = std::norm(psi1);
        row.two_slit_factor = two_slit_factor(beta, cfg);
        peak = std::max(peak, row.intensity_total);
        out.rows.push_back(row);
    }
    for (auto& row : out.rows) row.intensity_normalized = peak > 0 ? row.intensity_total / peak : 0.0;
    return out;
}

} // namespace dslit
