#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dslit/farfield.hpp"
#include "dslit/oracle.hpp"
#include "dslit/presets.hpp"

using namespace dslit;

namespace {

constexpr double pi = std::numbers::pi;

double rel(complex x, complex ref) { return std::abs(x - ref) / std::abs(ref); }

SimConfig geometry_in_lambda(double a, double b, double c, double d) {
    SimConfig cfg = default_config();
    const double lambda = wavelength(cfg);
    cfg.slits = {a * lambda, b * lambda, c * lambda, d * lambda};
    return cfg;
}

} // namespace

TEST(SineFourierIntegral, Examples) {
    const complex pole = sine_fourier_integral(1, pi, 1.0);
    EXPECT_EQ(pole, complex(0.0, -0.5));
    EXPECT_EQ(sine_fourier_integral(1, -pi / 2, 2.0), complex(0.0, 1.0));
    const complex base = sine_fourier_integral(1, 1.0, 1.0);
    EXPECT_NEAR(base.real(), 0.54557139074076895, 1e-15);
    EXPECT_NEAR(base.imag(), -0.29804700914922159, 1e-15);
    const complex odd3 = sine_fourier_integral(3, 2 * pi, 1.0);
    EXPECT_NEAR(odd3.real(), 0.38197186342054881, 1e-15);
    EXPECT_NEAR(odd3.imag(), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(sine_fourier_integral(3, 5 * pi, 1.0)), 0.0, 1e-15);
    EXPECT_THROW(sine_fourier_integral(2, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(sine_fourier_integral(1, 1.0, 0.0), std::invalid_argument);
}

TEST(SineFourierIntegral, ConjugationSymmetry) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const int p = 2 * static_cast<int>(20 * unit(rng)) + 1;
        const double L = 1e-9 + 1e-5 * unit(rng);
        double q = (unit(rng) - 0.5) * 4 * (p + 5) * pi / L;
        if (i % 4 == 0) q = (i % 8 ? 1 : -1) * p * pi / L * (1 + 1e-10 * (unit(rng) - 0.5));
        const complex plus = sine_fourier_integral(p, q, L);
        const complex minus = sine_fourier_integral(p, -q, L);
        ASSERT_LE(std::abs(minus - std::conj(plus)), 1e-14 * L) << "p=" << p << " qL=" << q * L;
    }
}

TEST(SineFourierIntegral, MatchesQuadratureOnRandomCases) {
    std::mt19937_64 rng(500);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const int p = 2 * static_cast<int>(8 * unit(rng)) + 1;
        const double L = 1e-8 + 1e-6 * unit(rng);
        const double kp = p * pi / L;
        double q;
        switch (i % 5) {
        case 0: q = (unit(rng) > 0.5 ? 1 : -1) * kp * (1 + 1e-9 * (unit(rng) - 0.5) / p); break;
        case 1: q = kp + (unit(rng) - 0.5) * 2.0 / L; break;
        default: q = (unit(rng) - 0.5) * 3 * kp;
        }
        const complex closed = sine_fourier_integral(p, q, L);
        const complex oracle = oracle_sine_fourier(p, q, L, 1e-13 * L);
        const bool window = std::abs(std::abs(q) - kp) * L < kSingularWindow;
        const double tol = window ? 1e-6 : 1e-9;
        ASSERT_LE(std::abs(closed - oracle) / std::max(std::abs(oracle), 1e-6 * L), tol)
            << "p=" << p << " qL=" << q * L;
    }
}

TEST(SineFourierIntegral, ContinuousAcrossWindowEdges) {
    for (int p : {1, 3, 7}) {
        const double L = 2.0;
        const double kp = p * pi / L;
        for (double sign : {1.0, -1.0}) {
            const complex at = sine_fourier_integral(p, sign * kp, L);
            for (double off : {0.99e-8, 1.01e-8, 1e-6, 0.999, 1.001}) {
                const complex near = sine_fourier_integral(p, sign * kp + off / L, L);
                EXPECT_LT(std::abs(near - at), 2 * off * L + 1e-15) << p << " " << off;
                // Inside the window the limit stands in for values that differ by O(offset).
                const double tol = off < kSingularWindow ? 1e-6 * L : 1e-12;
                EXPECT_NEAR(std::abs(near - oracle_sine_fourier(p, sign * kp + off / L, L, 1e-13)), 0.0, tol);
            }
        }
    }
}

TEST(ShiftedSineFourierIntegral, EqualsPhaseTimesUnshifted) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const int p = 2 * static_cast<int>(10 * unit(rng)) + 1;
        const double L = 1.0;
        const double s = 10 * unit(rng);
        const double q = (unit(rng) - 0.5) * 60;
        const complex direct = shifted_sine_fourier_integral(p, q, L, s);
        const complex translated = std::polar(1.0, -q * s) * sine_fourier_integral(p, q, L);
        ASSERT_LE(std::abs(direct - translated), 1e-11 * std::max(1.0, std::abs(translated)));
    }
}

TEST(ObliquityPrefactor, Examples) {
    const ModeTerm normal{{0, 0}, 1.0, complex(3.0, 0.0), true};
    const complex straight = obliquity_prefactor(normal, {0.0, 0.0}, 5.0, 1e300);
    EXPECT_NEAR(straight.real(), 0.0, 1e-15);
    EXPECT_NEAR(straight.imag(), 8.0, 1e-15);
    const ModeTerm evanescent{{1, 0}, 1.0, complex(0.0, 2.0), false};
    const complex decaying = obliquity_prefactor(evanescent, {0.0, 0.0}, 5.0, 0.5);
    EXPECT_NEAR(decaying.real(), -4.0, 1e-15);
    EXPECT_NEAR(decaying.imag(), 5.0, 1e-15);
    EXPECT_THROW(obliquity_prefactor(normal, {1.0, 1.0}, 5.0, 1.0), DomainError);
}

TEST(Slit1Amplitude, LinearInAmplitudeAndTimeOnlyShiftsPhase) {
    SimConfig cfg = figure_config(5);
    const DirectionAngles angles{cfg.beam.alpha, 0.03};
    const complex base = slit1_amplitude(angles, cfg).value;
    SimConfig doubled = cfg;
    doubled.beam.amplitude *= 2;
    EXPECT_LT(rel(slit1_amplitude(angles, doubled).value, 2.0 * base), 1e-14);
    SimConfig later = cfg;
    later.evaluation_time = 7.3e-7;
    const complex shifted = slit1_amplitude(angles, later).value;
    EXPECT_NEAR(std::abs(shifted), std::abs(base), 1e-12 * std::abs(base));
    EXPECT_GT(std::abs(shifted - base), 1e-3 * std::abs(base));
}

TEST(Slit1Amplitude, RejectsInvalidDirection) {
    SimConfig cfg = figure_config(5);
    EXPECT_THROW(slit1_amplitude({0.9, 0.9}, cfg), DomainError);
    EXPECT_THROW(slit2_amplitude({0.0, pi / 2}, cfg), DomainError);
}

TEST(Slit1Amplitude, MatchesSurfaceQuadrature) {
    SimConfig cfg = geometry_in_lambda(2, 30, 0.5, 4);
    cfg.truncation = {20, 40, 1e-6};
    const ModeSet modes = enumerate_modes(cfg);
    for (double beta : {0.0, 0.1, -0.25, 0.4}) {
        const DirectionAngles angles{cfg.beam.alpha, beta};
        const complex closed = slit1_amplitude(angles, cfg, modes).value;
        const complex oracle = oracle_surface_amplitude(angles, cfg, modes, 1e-10);
        EXPECT_LT(rel(closed, oracle), 1e-6) << beta;
    }
}

TEST(Slit2Amplitude, TranslationIdentityOnGrid) {
    for (int id : {3, 5, 7, 11}) {
        SimConfig cfg = figure_config(id);
        cfg.detector.steps = 501;
        const ModeSet modes = enumerate_modes(cfg);
        const double shift = cfg.slits.width_a + cfg.slits.separation_d;
        const double k = wavenumber(cfg);
        for (double beta : beta_grid(cfg.detector)) {
            const DirectionAngles angles{cfg.beam.alpha, beta};
            const complex one = slit1_amplitude(angles, cfg, modes).value;
            const complex two = slit2_amplitude(angles, cfg, modes).value;
            const complex expected = std::polar(1.0, -k * std::sin(beta) * shift) * one;
            ASSERT_LE(std::abs(two - expected), 1e-10 * std::abs(one) + 1e-300) << id << " " << beta;
        }
    }
}

TEST(TotalIntensity, CentreIsFourTimesSingleSlit) {
    SimConfig cfg = figure_config(7);
    const DirectionAngles centre{cfg.beam.alpha, 0.0};
    const double single = std::norm(slit1_amplitude(centre, cfg).value);
    EXPECT_NEAR(total_intensity(centre, cfg), 4.0 * single, 1e-12 * single);
}

TEST(TotalIntensity, FirstInterferenceZero) {
    SimConfig cfg = figure_config(5);
    const double beta = std::asin(wavelength(cfg) / (2 * (cfg.slits.width_a + cfg.slits.separation_d)));
    const double centre = total_intensity({cfg.beam.alpha, 0.0}, cfg);
    EXPECT_LT(total_intensity({cfg.beam.alpha, beta}, cfg), 1e-20 * centre);
}

TEST(FarFieldModel, AgreesWithLiteralModeSums) {
    for (int id : {3, 6, 10, 14}) {
        const SimConfig cfg = figure_config(id);
        const FarFieldModel model(cfg);
        for (double beta : {-0.41, -0.02, 0.0, 0.013, 0.27, 0.5}) {
            const DirectionAngles angles{cfg.beam.alpha, beta};
            const complex s1 = slit1_amplitude(angles, cfg, model.modes()).value;
            const complex s2 = slit2_amplitude(angles, cfg, model.modes()).value;
            EXPECT_LE(std::abs(model.slit1(beta) - s1), 1e-11 * std::abs(s1) + 1e-300) << id;
            EXPECT_LE(std::abs(model.slit2(beta) - s2), 1e-11 * std::abs(s2) + 1e-300) << id;
        }
    }
}

TEST(Scan, GridNormalizationAndFactor) {
    SimConfig cfg = figure_config(5);
    cfg.detector.steps = 501;
    const auto result = scan(cfg);
    ASSERT_EQ(result.rows.size(), 501u);
    EXPECT_EQ(result.config_echo, cfg);
    EXPECT_EQ(result.rows.front().beta, -0.5);
    EXPECT_EQ(result.rows.back().beta, 0.5);
    double top = 0.0;
    for (const auto& r : result.rows) {
        top = std::max(top, r.intensity_normalized);
        EXPECT_GE(r.intensity_normalized, 0.0);
        EXPECT_GE(r.two_slit_factor, 0.0);
        EXPECT_LE(r.two_slit_factor, 4.0);
    }
    EXPECT_EQ(top, 1.0);
    EXPECT_DOUBLE_EQ(result.rows[250].two_slit_factor, 4.0);
}

TEST(Scan, TwoSlitFactorIsEven) {
    const SimConfig cfg = figure_config(9);
    for (double beta : {0.01, 0.123, 0.4})
        EXPECT_NEAR(two_slit_factor(beta, cfg), two_slit_factor(-beta, cfg), 1e-12);
}

TEST(Scan, InvalidConfigThrows) {
    SimConfig cfg = figure_config(5);
    cfg.detector.steps = 1;
    EXPECT_THROW(scan(cfg), ConfigError);
}
