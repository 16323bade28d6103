#pragma once

// Eigenmode expansion of the wavefunction inside a rectangular slit.
//
// Inside the slit the wavefunction is a sum of sine modes
//   D_mn sin((2n+1) pi x / b) sin((2m+1) pi y / a) exp(i k_z z),
// where only odd transverse orders carry weight when matching a uniform
// incoming plane wave at z = 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "config.hpp"

namespace dslit {

using complex = std::complex<double>;

/// Thrown when a point or direction lies outside the domain of a formula.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Mode (m, n) with odd transverse orders 2m+1 along y and 2n+1 along x.
struct ModeIndex {
    int m = 0;
    int n = 0;

    int y_order() const noexcept { return 2 * m + 1; }
    int x_order() const noexcept { return 2 * n + 1; }

    bool operator==(const ModeIndex&) const = default;
};

struct ModeTerm {
    ModeIndex index;
    double coefficient = 0.0; // D_mn
    complex k_z;              // 1/m; real when propagating, +i|k_z| when evanescent
    bool propagating = true;
};

/// Fourier coefficient of a uniform amplitude on the odd sine basis.
inline double mode_coefficient(ModeIndex index, double amplitude) {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return 16.0 * amplitude / (index.y_order() * static_cast<double>(index.x_order()) * pi2);
}

/// Axial wavenumber; the decaying branch +i sqrt(-r) is taken below cutoff.
inline complex axial_wavenumber(ModeIndex index, const SlitGeometry& slits, double k) {
    const double kx = index.x_order() * std::numbers::pi / slits.length_b;
    const double ky = index.y_order() * std::numbers::pi / slits.width_a;
    const double r = k * k - kx * kx - ky * ky;
    if (r >= 0) return {std::sqrt(r), 0.0};
    return {0.0, std::sqrt(-r)};
}

/// Exit-face factor exp(i k_z c).
inline complex thickness_attenuation(complex k_z, double c) {
    if (c < 0) throw DomainError("thickness_attenuation: c must be >= 0");
    return std::exp(complex(0.0, 1.0) * k_z * c);
}

struct ModeSet {
    std::vector<ModeTerm> modes;
    /// Set when the (m_max, n_max) corner still carries weight above the
    /// drop tolerance, i.e. the index caps cut off significant modes.
    bool truncation_overflow = false;
};

/**
 * Enumerate the truncated mode set of a configuration.
 *
 * A mode is kept when it propagates or when its post-thickness weight
 * |D_mn exp(i k_z c)| is at least evanescent_drop_tol times that of (0, 0).
 * Order is m-major, then n.
 */
inline ModeSet enumerate_modes(const SimConfig& cfg) {
    const double k = wavenumber(cfg);
    const double c = cfg.slits.thickness_c;
    const double amp = cfg.beam.amplitude;
    const auto& tr = cfg.truncation;

    auto weight = [&](ModeIndex idx, complex kz) {
        return mode_coefficient(idx, amp) * std::exp(-kz.imag() * c);
    };
    const ModeIndex origin{0, 0};
    const double w00 = weight(origin, axial_wavenumber(origin, cfg.slits, k));
    const double cutoff = tr.evanescent_drop_tol * w00;

    ModeSet out;
    for (int m = 0; m <= tr.m_max; ++m) {
        for (int n = 0; n <= tr.n_max; ++n) {
            const ModeIndex idx{m, n};
            const complex kz = axial_wavenumber(idx, cfg.slits, k);
            const bool propagating = kz.imag() == 0.0;
            if (!propagating && !(weight(idx, kz) >= cutoff)) continue;
            out.modes.push_back({idx, mode_coefficient(idx, amp), kz, propagating});
        }
    }
    const ModeIndex corner{tr.m_max, tr.n_max};
    out.truncation_overflow =
        weight(corner, axial_wavenumber(corner, cfg.slits, k)) > cutoff;
    return out;
}

/// Truncated in-slit wavefunction of the first slit, 0<=x<=b, 0<=y<=a, 0<=z<=c.
inline complex in_slit_wavefunction(double x, double y, double z, double t, const SimConfig& cfg,
                                    const ModeSet& modes) {
    const auto& s = cfg.slits;
    if (!(x >= 0 && x <= s.length_b && y >= 0 && y <= s.width_a && z >= 0 && z <= s.thickness_c))
        throw DomainError("in_slit_wavefunction: point outside the first slit");

    // Exact zeros on the walls; sin(p*pi) is not exactly zero in floating point.
    if (x == 0 || x == s.length_b || y == 0 || y == s.width_a) return {0.0, 0.0};

    const double pi = std::numbers::pi;
    complex sum{0.0, 0.0};
    for (const auto& mode : modes.modes) {
        const double transverse = std::sin(mode.index.x_order() * pi * x / s.length_b) *
                                  std::sin(mode.index.y_order() * pi * y / s.width_a);
        sum += mode.coefficient * transverse * std::exp(complex(0.0, 1.0) * mode.k_z * z);
    }
    const double energy_phase = -cfg.beam.energy * t / cfg.constants.hbar;
    return sum * std::polar(1.0, energy_phase);
}

inline complex in_slit_wavefunction(double x, double y, double z, double t, const SimConfig& cfg) {
    return in_slit_wavefunction(x, y, z, t, cfg, enumerate_modes(cfg));
}

/// Second slit occupies a+d <= y <= 2a+d; it is the first slit translated by a+d.
inline complex second_slit_wavefunction(double x, double y, double z, double t,
                                        const SimConfig& cfg, const ModeSet& modes) {
    const double shift = cfg.slits.width_a + cfg.slits.separation_d;
    if (!(y >= shift && y <= shift + cfg.slits.width_a))
        throw DomainError("second_slit_wavefunction: point outside the second slit");
    return in_slit_wavefunction(x, std::min(y - shift, cfg.slits.width_a), z, t, cfg, modes);
}

inline complex second_slit_wavefunction(double x, double y, double z, double t,
                                        const SimConfig& cfg) {
    return second_slit_wavefunction(x, y, z, t, cfg, enumerate_modes(cfg));
}

} // namespace dslit
