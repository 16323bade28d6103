#pragma once

// Numerical ground truth for the closed-form far-field amplitudes.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <valarray>
#include <vector>

#include "config.hpp"
#include "farfield.hpp"
#include "quadrature.hpp"
#include "slit_modes.hpp"

namespace dslit {

namespace detail {

/// Starting panel count so that no panel spans more than half an oscillation.
inline int oscillation_panels(double q, double L, int max_order) {
    const double cycles = (std::abs(q) * L + max_order * std::numbers::pi) / std::numbers::pi;
    return std::max(1, static_cast<int>(std::ceil(cycles)));
}

/// Calls visit(j, sin((2j+1) theta)) for j < count via the Chebyshev recurrence.
template <class Visit>
void odd_sines(double theta, std::size_t count, Visit&& visit) {
    if (count == 0) return;
    const double step = 2.0 * std::cos(2.0 * theta);
    double prev = -std::sin(theta), cur = std::sin(theta);
    for (std::size_t j = 0; j < count; ++j) {
        visit(j, cur);
        const double next = step * cur - prev;
        prev = cur;
        cur = next;
    }
}

} // namespace detail

/// Quadrature of integral_0^L exp(-i q y) sin(p pi y / L) dy; tol is absolute.
inline complex oracle_sine_fourier(int p, double q, double L, double tol) {
    detail::require_odd(p, "oracle_sine_fourier");
    const double kp = p * std::numbers::pi / L;
    auto integrand = [&](double y) { return std::polar(std::sin(kp * y), -q * y); };
    return integrate_1d(integrand, 0.0, L, tol, detail::oscillation_panels(q, L, p)).value;
}

/**
 * First-slit far-field amplitude by nested quadrature of the Kirchhoff
 * surface integral over the exit face z' = c.
 *
 * The integrand is exp(-i k2.r') times the full mode sum weighted by the
 * normal-derivative bracket  i k_z + i n.k2 - n.R/R^2, with the direction
 * cosine n.k2/k = cos(theta) taken from the closure relation. The inner x'
 * rule integrates the whole vector of x-basis functions at once; its nodes
 * do not depend on y', so it is shared by every outer y' node.
 *
 * `tol` is relative: each nested quadrature targets tol times the integral
 * of the magnitude of its integrand.
 */
inline complex oracle_surface_amplitude(DirectionAngles angles, const SimConfig& cfg,
                                        const ModeSet& modes, double tol) {
    detail::require_direction(angles);
    const double pi = std::numbers::pi;
    const double k = wavenumber(cfg);
    const double R = cfg.detector.distance_R;
    const double a = cfg.slits.width_a, b = cfg.slits.length_b, c = cfg.slits.thickness_c;
    const double sa = std::sin(angles.alpha), sb = std::sin(angles.beta);
    const double cos_theta = std::sqrt(1.0 - sa * sa - sb * sb);
    const double qx = k * sa, qy = k * sb;

    int n_top = 0, m_top = 0;
    for (const auto& mode : modes.modes) {
        n_top = std::max(n_top, mode.index.n);
        m_top = std::max(m_top, mode.index.m);
    }
    const std::size_t n_count = static_cast<std::size_t>(n_top) + 1;

    // Inner: J_n = integral_0^b exp(-i qx x) sin((2n+1) pi x / b) dx for all n.
    using Vec = std::valarray<complex>;
    auto x_basis = [&](double x) {
        Vec v(n_count);
        const complex phase = std::polar(1.0, -qx * x);
        detail::odd_sines(pi * x / b, n_count, [&](std::size_t n, double s) { v[n] = phase * s; });
        return v;
    };
    const Vec inner = adaptive_simpson<Vec>(x_basis, 0.0, b, tol * b,
                                            detail::oscillation_panels(qx, b, 2 * n_top + 1))
                          .value;

    // Mode sum contracted with the inner integrals, per y-order.
    std::vector<complex> per_m(static_cast<std::size_t>(m_top) + 1, complex(0.0, 0.0));
    const complex bracket_dir = complex(0.0, k * cos_theta) - cos_theta / R;
    for (const auto& mode : modes.modes) {
        const complex bracket = complex(0.0, 1.0) * mode.k_z + bracket_dir;
        const complex exit_face = std::exp(complex(0.0, 1.0) * mode.k_z * c);
        per_m[static_cast<std::size_t>(mode.index.m)] +=
            mode.coefficient * exit_face * bracket * inner[static_cast<std::size_t>(mode.index.n)];
    }

    double scale = 0.0;
    for (const auto& v : per_m) scale += std::abs(v);
    auto outer = [&](double y) {
        complex sum{0.0, 0.0};
        detail::odd_sines(pi * y / a, per_m.size(), [&](std::size_t m, double s) { sum += per_m[m] * s; });
        return sum * std::polar(1.0, -qy * y);
    };
    const complex surface =
        integrate_1d(outer, 0.0, a, std::max(tol * a * scale, 1e-300),
                     detail::oscillation_panels(qy, a, 2 * m_top + 1))
            .value;

    const double energy_phase = -cfg.beam.energy * cfg.evaluation_time / cfg.constants.hbar;
    return -std::polar(1.0 / (4.0 * pi * R), k * R) * std::polar(1.0, energy_phase) * surface;
}

inline complex oracle_surface_amplitude(DirectionAngles angles, const SimConfig& cfg, double tol) {
    return oracle_surface_amplitude(angles, cfg, enumerate_modes(cfg), tol);
}

/**
 * Detector angles for spot checks: the centre, then sin(beta) at 0.5, 1.5,
 * 2.5, 3.5 lambda/a (near single-slit envelope maxima), then fractions of
 * beta_max for geometries where those fall outside the grid.
 */
inline std::vector<double> oracle_spot_angles(const SimConfig& cfg, std::size_t count = 5) {
    const double ratio = wavelength(cfg) / cfg.slits.width_a;
    std::vector<double> candidates{0.0};
    for (double f : {0.5, 1.5, 2.5, 3.5})
        if (f * ratio < 1.0) candidates.push_back(std::asin(f * ratio));
    for (double f : {0.25, 0.5, 0.75, 0.9}) candidates.push_back(f * cfg.detector.beta_max);

    std::vector<double> out;
    for (double beta : candidates) {
        if (out.size() == count) break;
        if (beta < cfg.detector.beta_min || beta > cfg.detector.beta_max) continue;
        if (!direction_is_valid(cfg.beam.alpha, beta)) continue;
        if (std::find(out.begin(), out.end(), beta) != out.end()) continue;
        out.push_back(beta);
    }
    return out;
}

inline constexpr double kSurfaceOracleRelTol = 1e-6;
inline constexpr double kSineOracleRelTol = 1e-9;
inline constexpr double kWindowOracleRelTol = 1e-6;
/// Relative tolerance handed to the nested surface quadrature.
inline constexpr double kSurfaceQuadratureTol = 1e-9;
/// Sine-integral residual floor, as a fraction of the interval length.
inline constexpr double kSineOracleFloor = 1e-6;

struct OracleCheckRow {
    std::string check; // "sine_fourier_p<P>" or "slit1_amplitude"
    double beta = 0.0;
    complex closed_form;
    complex oracle;
    double relative_residual = 0.0;
    double tolerance = 0.0;

    bool passed() const { return relative_residual <= tolerance; }
};

/**
 * Closed form against quadrature at the spot angles of a configuration:
 * the y-integrals of the lowest three orders and the full first-slit
 * amplitude.
 */
inline std::vector<OracleCheckRow> oracle_check(const SimConfig& cfg) {
    const ModeSet modes = enumerate_modes(cfg);
    const double k = wavenumber(cfg);
    const double a = cfg.slits.width_a;
    // Residuals are relative to the reference, floored at floor_scale so
    // exact analytic zeros of the integrals do not divide by rounding noise.
    auto relative = [](complex x, complex ref, double floor_scale) {
        return std::abs(x - ref) / std::max(std::abs(ref), floor_scale);
    };

    std::vector<OracleCheckRow> rows;
    for (double beta : oracle_spot_angles(cfg)) {
        const double q = k * std::sin(beta);
        for (int p : {1, 3, 5}) {
            OracleCheckRow row;
            row.check = "sine_fourier_p" + std::to_string(p);
            row.beta = beta;
            row.closed_form = sine_fourier_integral(p, q, a);
            row.oracle = oracle_sine_fourier(p, q, a, 1e-13 * a);
            row.relative_residual = relative(row.closed_form, row.oracle, kSineOracleFloor * a);
            row.tolerance = std::abs(q - p * std::numbers::pi / a) * a < kSingularWindow
                                ? kWindowOracleRelTol
                                : kSineOracleRelTol;
            rows.push_back(row);
        }
        OracleCheckRow row;
        row.check = "slit1_amplitude";
        row.beta = beta;
        const DirectionAngles angles{cfg.beam.alpha, beta};
        row.closed_form = slit1_amplitude(angles, cfg, modes).value;
        row.oracle = oracle_surface_amplitude(angles, cfg, modes, kSurfaceQuadratureTol);
        row.relative_residual = relative(row.closed_form, row.oracle, 0.0);
        row.tolerance = kSurfaceOracleRelTol;
        rows.push_back(row);
    }
    return rows;
}

} // namespace dslit
