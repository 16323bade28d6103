#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dslit/config.hpp"

using namespace dslit;

namespace {

SimConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SimConfig cfg = default_config();
    cfg.beam.mass *= 0.5 + 3.0 * unit(rng);
    cfg.beam.energy *= 0.1 + 10.0 * unit(rng);
    cfg.beam.amplitude = 1e-3 + 1e9 * unit(rng);
    cfg.beam.alpha = 0.3 * (unit(rng) - 0.5);
    const double lambda = de_broglie_wavelength(cfg.beam, cfg.constants);
    cfg.slits = {(0.5 + 60 * unit(rng)) * lambda, (10 + 2000 * unit(rng)) * lambda,
                 100 * unit(rng) * lambda, 150 * unit(rng) * lambda};
    cfg.detector.distance_R = 0.01 + 5 * unit(rng);
    cfg.detector.beta_min = -0.6 * unit(rng);
    cfg.detector.beta_max = 0.6 * unit(rng) + 1e-3;
    cfg.detector.steps = 2 + static_cast<int>(5000 * unit(rng));
    cfg.truncation = {static_cast<int>(300 * unit(rng)), static_cast<int>(300 * unit(rng)),
                      1e-9 + 0.5 * unit(rng)};
    cfg.evaluation_time = 1e-9 * unit(rng);
    return cfg;
}

} // namespace

TEST(Wavelength, ElectronAtOneMilliElectronVolt) {
    // Reference value evaluated independently at 30 digits.
    BeamSpec beam{9.11e-31, 0.001 * 1.602176634e-19, 1e8, 0.01};
    const double lambda = de_broglie_wavelength(beam);
    EXPECT_NEAR(lambda, 3.88e-8, 0.005 * 3.88e-8);
    EXPECT_NEAR(lambda, 3.8797428800884993e-8, 1e-21);
    EXPECT_NEAR(wavenumber(beam), 1.619484976549854e8, 1e-5);
}

TEST(Wavelength, ScalesAsInverseRootOfEnergyAndMass) {
    BeamSpec beam{9.11e-31, 1.602176634e-22, 1.0, 0.0};
    const double base = de_broglie_wavelength(beam);
    BeamSpec hot = beam;
    hot.energy *= 4;
    EXPECT_NEAR(de_broglie_wavelength(hot), base / 2, 1e-15 * base);
    BeamSpec heavy = beam;
    heavy.mass *= 4;
    EXPECT_NEAR(de_broglie_wavelength(heavy), base / 2, 1e-15 * base);
}

TEST(Wavenumber, InjectedHbarScalesInversely) {
    BeamSpec beam{9.11e-31, 1.602176634e-22, 1.0, 0.0};
    PhysicalConstants doubled;
    doubled.hbar *= 2;
    EXPECT_NEAR(wavenumber(beam, doubled), wavenumber(beam) / 2, 1e-6);
}

TEST(Wavenumber, TimesWavelengthIsTwoPiForParsedConfigs) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const SimConfig cfg = parse_config(serialize_config(random_config(rng)));
        EXPECT_NEAR(wavenumber(cfg) * wavelength(cfg), 2 * std::numbers::pi, 2e-12 * std::numbers::pi);
    }
}

TEST(ParseConfig, EmptyFileGivesDefaults) {
    const SimConfig cfg = parse_config("");
    EXPECT_DOUBLE_EQ(cfg.beam.mass, 9.11e-31);
    EXPECT_DOUBLE_EQ(cfg.beam.energy, 0.001 * 1.602176634e-19);
    EXPECT_DOUBLE_EQ(cfg.beam.amplitude, 1e8);
    EXPECT_DOUBLE_EQ(cfg.beam.alpha, 0.01);
    EXPECT_DOUBLE_EQ(cfg.detector.distance_R, 1.0);
    EXPECT_DOUBLE_EQ(cfg.evaluation_time, 0.0);
    EXPECT_EQ(cfg.truncation.m_max, 256);
    EXPECT_EQ(cfg.truncation.n_max, 256);
    EXPECT_DOUBLE_EQ(cfg.truncation.evanescent_drop_tol, 1e-6);
}

TEST(ParseConfig, LambdaLengthsResolveAgainstBeam) {
    const SimConfig cfg = parse_config("# minimal\na = 5 lambda\nd = 25 lambda   # wide gap\n");
    const double lambda = wavelength(cfg);
    EXPECT_DOUBLE_EQ(cfg.slits.width_a, 5 * lambda);
    EXPECT_DOUBLE_EQ(cfg.slits.separation_d, 25 * lambda);
    EXPECT_DOUBLE_EQ(cfg.slits.length_b, 1000 * lambda);
    EXPECT_DOUBLE_EQ(cfg.beam.amplitude, 1e8);
    EXPECT_DOUBLE_EQ(cfg.beam.alpha, 0.01);
}

TEST(ParseConfig, LambdaUsesFinalBeamRegardlessOfKeyOrder) {
    const SimConfig cfg = parse_config("a = 2 lambda\nenergy_ev = 0.004\n");
    EXPECT_NEAR(cfg.slits.width_a, 2 * 3.8797428800884993e-8 / 2, 1e-20);
}

TEST(ParseConfig, MetreLengthsAreTakenVerbatim) {
    const SimConfig cfg = parse_config("a = 2e-7 m\nb = 4e-5 m\nc = 0 m\nd = 1e-6 m\n");
    EXPECT_EQ(cfg.slits.width_a, 2e-7);
    EXPECT_EQ(cfg.slits.length_b, 4e-5);
    EXPECT_EQ(cfg.slits.thickness_c, 0.0);
    EXPECT_EQ(cfg.slits.separation_d, 1e-6);
}

TEST(ParseConfig, Errors) {
    auto key_of = [](const char* text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return e.key();
        }
        return std::string("<none>");
    };
    EXPECT_EQ(key_of("a = -1 m"), "width_a");
    EXPECT_EQ(key_of("colour = red"), "colour");
    EXPECT_EQ(key_of("amplitude = 1e8x"), "amplitude");
    EXPECT_EQ(key_of("amplitude = 1\namplitude = 2"), "amplitude");
    EXPECT_EQ(key_of("A = 1"), "A"); // keys are case-sensitive
    EXPECT_EQ(key_of("a = 3 furlongs"), "a");
    EXPECT_EQ(key_of("a = 3"), "a");
    EXPECT_EQ(key_of("beta_steps = 1"), "steps");
    EXPECT_EQ(key_of("beta_steps = 2.5"), "beta_steps");
    EXPECT_EQ(key_of("evanescent_drop_tol = 1"), "evanescent_drop_tol");
    EXPECT_EQ(key_of("alpha_rad = 1.6"), "alpha");
    EXPECT_EQ(key_of("beta_min_rad = 0.2\nbeta_max_rad = 0.1"), "beta_min");
    EXPECT_EQ(key_of("just some words"), "line 1");
}

TEST(ParseConfig, RejectsGridOutsideForwardHemisphere) {
    // sin^2(0.5) + sin^2(1.4) > 1
    try {
        parse_config("alpha_rad = 0.5\nbeta_max_rad = 1.4\n");
        FAIL() << "expected a ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "beta_max");
    }
    EXPECT_NO_THROW(parse_config("alpha_rad = 0.5\nbeta_max_rad = 1.0\n"));
}

TEST(ParseConfig, SerializeRoundTripIsExact) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        const SimConfig original = random_config(rng);
        ASSERT_NO_THROW(validate(original));
        const SimConfig restored = parse_config(serialize_config(original));
        ASSERT_EQ(restored, original) << serialize_config(original);
    }
}

TEST(ParseConfig, EnergyInJoules) {
    EXPECT_EQ(parse_config("energy_j = 3.2e-22\n").beam.energy, 3.2e-22);
    try {
        parse_config("energy_j = 3.2e-22\nenergy_ev = 0.002\n");
        FAIL() << "expected a ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.key(), "energy_j");
    }
}

TEST(BetaGrid, EndpointsAndUniformity) {
    DetectorSpec det{1.0, -0.2, 0.3, 6};
    const auto grid = beta_grid(det);
    ASSERT_EQ(grid.size(), 6u);
    EXPECT_EQ(grid.front(), -0.2);
    EXPECT_EQ(grid.back(), 0.3);
    for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_NEAR(grid[i] - grid[i - 1], 0.1, 1e-15);
}
