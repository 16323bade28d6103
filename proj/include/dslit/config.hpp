#pragma once

/**
 * @brief Experiment configuration for the double-slit simulator.
 *
 * Internal units are SI throughout (m, kg, J, s, rad). Electron-volts and
 * multiples of the de Broglie wavelength are accepted only by the text
 * config parser and converted on entry.
 */

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dslit {

/// Injectable physical constants; defaults follow the reference parameter set.
struct PhysicalConstants {
    double hbar = 1.055e-34;               // J s
    double joule_per_ev = 1.602176634e-19; // J / eV
    double electron_mass = 9.11e-31;       // kg

    bool operator==(const PhysicalConstants&) const = default;
};

/// Raised for any configuration problem; key() names the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& what)
        : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

struct BeamSpec {
    double mass = 9.11e-31;   // kg
    double energy = 0.0;      // J
    double amplitude = 1e8;   // dimensionless scale of the incoming plane wave
    double alpha = 0.01;      // rad, fixed out-of-plane direction angle

    bool operator==(const BeamSpec&) const = default;
};

struct SlitGeometry {
    double width_a = 0.0;      // m
    double length_b = 0.0;     // m
    double thickness_c = 0.0;  // m
    double separation_d = 0.0; // m

    bool operator==(const SlitGeometry&) const = default;
};

struct DetectorSpec {
    double distance_R = 1.0; // m
    double beta_min = -0.5;  // rad
    double beta_max = 0.5;   // rad
    int steps = 2001;

    bool operator==(const DetectorSpec&) const = default;
};

struct TruncationSpec {
    int m_max = 256;
    int n_max = 256;
    double evanescent_drop_tol = 1e-6;

    bool operator==(const TruncationSpec&) const = default;
};

struct SimConfig {
    BeamSpec beam;
    SlitGeometry slits;
    DetectorSpec detector;
    TruncationSpec truncation;
    double evaluation_time = 0.0; // s
    PhysicalConstants constants;

    bool operator==(const SimConfig&) const = default;
};

inline double de_broglie_wavelength(const BeamSpec& beam, const PhysicalConstants& pc = {}) {
    return 2.0 * std::numbers::pi * pc.hbar / std::sqrt(2.0 * beam.mass * beam.energy);
}

inline double wavenumber(const BeamSpec& beam, const PhysicalConstants& pc = {}) {
    return std::sqrt(2.0 * beam.mass * beam.energy) / pc.hbar;
}

inline double wavelength(const SimConfig& cfg) { return de_broglie_wavelength(cfg.beam, cfg.constants); }
inline double wavenumber(const SimConfig& cfg) { return wavenumber(cfg.beam, cfg.constants); }

/// Uniform grid in angle; the last point is exactly beta_max.
inline std::vector<double> beta_grid(const DetectorSpec& det) {
    std::vector<double> grid(static_cast<std::size_t>(std::max(det.steps, 0)));
    const double span = det.beta_max - det.beta_min;
    for (int i = 0; i < det.steps; ++i)
        grid[static_cast<std::size_t>(i)] = det.beta_min + span * i / (det.steps - 1);
    if (!grid.empty()) grid.back() = det.beta_max;
    return grid;
}

/// True when the direction (alpha, beta) has real direction cosines.
inline bool direction_is_valid(double alpha, double beta) {
    const double sa = std::sin(alpha), sb = std::sin(beta);
    return sa * sa + sb * sb < 1.0;
}

inline void validate(const SimConfig& cfg) {
    auto require = [](bool ok, const char* key, const char* what) {
        if (!ok) throw ConfigError(key, what);
    };
    const auto& b = cfg.beam;
    require(std::isfinite(b.mass) && b.mass > 0, "mass", "must be > 0");
    require(std::isfinite(b.energy) && b.energy > 0, "energy", "must be > 0");
    require(std::isfinite(b.amplitude) && b.amplitude > 0, "amplitude", "must be > 0");
    require(std::isfinite(b.alpha) && std::abs(b.alpha) < std::numbers::pi / 2, "alpha",
            "|alpha| must be < pi/2");

    const auto& s = cfg.slits;
    require(std::isfinite(s.width_a) && s.width_a > 0, "width_a", "must be > 0");
    require(std::isfinite(s.length_b) && s.length_b > 0, "length_b", "must be > 0");
    require(std::isfinite(s.thickness_c) && s.thickness_c >= 0, "thickness_c", "must be >= 0");
    require(std::isfinite(s.separation_d) && s.separation_d >= 0, "separation_d", "must be >= 0");

    const auto& d = cfg.detector;
    require(std::isfinite(d.distance_R) && d.distance_R > 0, "distance_R", "must be > 0");
    require(std::isfinite(d.beta_min) && std::isfinite(d.beta_max) && d.beta_min < d.beta_max,
            "beta_min", "must be < beta_max");
    require(d.steps >= 2, "steps", "must be >= 2");

    const auto& t = cfg.truncation;
    require(t.m_max >= 0, "m_max", "must be >= 0");
    require(t.n_max >= 0, "n_max", "must be >= 0");
    require(t.evanescent_drop_tol > 0 && t.evanescent_drop_tol < 1, "evanescent_drop_tol",
            "must lie in (0, 1)");
    require(std::isfinite(cfg.evaluation_time), "time", "must be finite");

    for (double beta : beta_grid(d)) {
        if (!direction_is_valid(b.alpha, beta)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "sin^2(alpha) + sin^2(beta) >= 1 at beta = %.17g", beta);
            throw ConfigError("beta_max", buf);
        }
    }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view text, const std::string& key) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw ConfigError(key, "malformed number '" + std::string(text) + "'");
    return value;
}

inline int parse_int(std::string_view text, const std::string& key) {
    int value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        throw ConfigError(key, "malformed integer '" + std::string(text) + "'");
    return value;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct LengthValue {
    double value;
    bool in_lambda;
};

inline LengthValue parse_length(std::string_view text, const std::string& key) {
    const auto space = text.find_last_of(" \t");
    if (space == std::string_view::npos)
        throw ConfigError(key, "expected '<number> m' or '<number> lambda'");
    const auto unit = trim(text.substr(space + 1));
    const auto number = trim(text.substr(0, space));
    if (unit == "m") return {parse_double(number, key), false};
    if (unit == "lambda") return {parse_double(number, key), true};
    throw ConfigError(key, "unknown length unit '" + std::string(unit) + "'");
}

} // namespace detail

/**
 * Parse a `key = value` document into a validated SimConfig.
 *
 * Lengths a, b, c, d take a unit token (`m` or `lambda`); `lambda` is
 * resolved against the de Broglie wavelength of the final beam, so key
 * order does not matter. Missing keys keep their defaults.
 */
inline SimConfig parse_config(std::string_view text, const PhysicalConstants& pc = {}) {
    static const std::set<std::string, std::less<>> known = {
        "mass_kg", "energy_ev", "energy_j", "amplitude", "alpha_rad", "a", "b", "c", "d", "R_m",
        "beta_min_rad", "beta_max_rad", "beta_steps", "m_max", "n_max", "evanescent_drop_tol",
        "time_s",
    };

    std::map<std::string, std::string, std::less<>> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
        std::string key(detail::trim(line.substr(0, eq)));
        const auto value = detail::trim(line.substr(eq + 1));
        if (!known.contains(key)) throw ConfigError(key, "unknown key");
        if (entries.contains(key)) throw ConfigError(key, "duplicate key");
        entries.emplace(std::move(key), std::string(value));
    }

    SimConfig cfg;
    cfg.constants = pc;
    cfg.beam.mass = pc.electron_mass;
    cfg.beam.energy = 0.001 * pc.joule_per_ev;

    auto real = [&](const char* key, double& dst) {
        if (auto it = entries.find(key); it != entries.end()) dst = detail::parse_double(it->second, key);
    };
    auto integer = [&](const char* key, int& dst) {
        if (auto it = entries.find(key); it != entries.end()) dst = detail::parse_int(it->second, key);
    };

    real("mass_kg", cfg.beam.mass);
    if (entries.contains("energy_ev") && entries.contains("energy_j"))
        throw ConfigError("energy_j", "give either energy_ev or energy_j, not both");
    if (auto it = entries.find("energy_ev"); it != entries.end())
        cfg.beam.energy = detail::parse_double(it->second, "energy_ev") * pc.joule_per_ev;
    real("energy_j", cfg.beam.energy);
    real("amplitude", cfg.beam.amplitude);
    real("alpha_rad", cfg.beam.alpha);
    real("R_m", cfg.detector.distance_R);
    real("beta_min_rad", cfg.detector.beta_min);
    real("beta_max_rad", cfg.detector.beta_max);
    integer("beta_steps", cfg.detector.steps);
    integer("m_max", cfg.truncation.m_max);
    integer("n_max", cfg.truncation.n_max);
    real("evanescent_drop_tol", cfg.truncation.evanescent_drop_tol);
    real("time_s", cfg.evaluation_time);

    // Defaults for the geometry, in wavelengths.
    detail::LengthValue a{5, true}, b{1000, true}, c{1, true}, d{10, true};
    auto length = [&](const char* key, detail::LengthValue& dst) {
        if (auto it = entries.find(key); it != entries.end()) dst = detail::parse_length(it->second, key);
    };
    length("a", a);
    length("b", b);
    length("c", c);
    length("d", d);

    const bool beam_ok = cfg.beam.mass > 0 && cfg.beam.energy > 0;
    const double lambda = beam_ok ? de_broglie_wavelength(cfg.beam, pc) : 0.0;
    auto resolve = [&](const char* key, const detail::LengthValue& v) {
        if (v.in_lambda && !beam_ok)
            throw ConfigError(key, "lambda units need a valid mass and energy");
        return v.in_lambda ? v.value * lambda : v.value;
    };
    cfg.slits.width_a = resolve("a", a);
    cfg.slits.length_b = resolve("b", b);
    cfg.slits.thickness_c = resolve("c", c);
    cfg.slits.separation_d = resolve("d", d);

    validate(cfg);
    return cfg;
}

/// The all-defaults configuration (equivalent to parsing an empty file).
inline SimConfig default_config(const PhysicalConstants& pc = {}) { return parse_config("", pc); }

/**
 * Render a config in the text format. Lengths are written in metres and
 * energy in eV, each with enough digits that parse_config restores the
 * same bits. Energies no eV value maps onto exactly are written in joules.
 */
inline std::string serialize_config(const SimConfig& cfg) {
    using detail::format_double;
    // Pick the decimal eV value whose conversion back to joules is exact.
    const double f = cfg.constants.joule_per_ev;
    double ev = cfg.beam.energy / f;
    for (int step = 0; step < 16 && ev * f != cfg.beam.energy; ++step)
        ev = std::nextafter(ev, ev * f < cfg.beam.energy ? INFINITY : -INFINITY);

    std::ostringstream out;
    out << "mass_kg = " << format_double(cfg.beam.mass) << '\n'
        << (ev * f == cfg.beam.energy ? "energy_ev = " + format_double(ev)
                                       : "energy_j = " + format_double(cfg.beam.energy))
        << '\n'
        << "amplitude = " << format_double(cfg.beam.amplitude) << '\n'
        << "alpha_rad = " << format_double(cfg.beam.alpha) << '\n'
        << "a = " << format_double(cfg.slits.width_a) << " m\n"
        << "b = " << format_double(cfg.slits.length_b) << " m\n"
        << "c = " << format_double(cfg.slits.thickness_c) << " m\n"
        << "d = " << format_double(cfg.slits.separation_d) << " m\n"
        << "R_m = " << format_double(cfg.detector.distance_R) << '\n'
        << "beta_min_rad = " << format_double(cfg.detector.beta_min) << '\n'
        << "beta_max_rad = " << format_double(cfg.detector.beta_max) << '\n'
        << "beta_steps = " << cfg.detector.steps << '\n'
        << "m_max = " << cfg.truncation.m_max << '\n'
        << "n_max = " << cfg.truncation.n_max << '\n'
        << "evanescent_drop_tol = " << format_double(cfg.truncation.evanescent_drop_tol) << '\n'
        << "time_s = " << format_double(cfg.evaluation_time) << '\n';
    return out.str();
}

} // namespace dslit
