#pragma once

// Pattern analytics over a diffraction scan.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "config.hpp"
#include "farfield.hpp"

namespace dslit {

struct Peak {
    double beta = 0.0;
    double intensity = 0.0;
    std::optional<int> order_index; // nearest two-slit order, if within a quarter spacing
};

/// Interior local maxima of intensity_total, refined by a three-point parabola.
inline std::vector<Peak> find_peaks(const DiffractionScan& scan) {
    const auto& rows = scan.rows;
    if (rows.size() < 3) throw std::invalid_argument("find_peaks: need at least 3 rows");

    const auto& cfg = scan.config_echo;
    const bool has_geometry = cfg.slits.width_a > 0 && cfg.beam.energy > 0 && cfg.beam.mass > 0;
    const double order_scale =
        has_geometry ? (cfg.slits.width_a + cfg.slits.separation_d) / wavelength(cfg) : 0.0;

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        const double left = rows[i - 1].intensity_total;
        const double mid = rows[i].intensity_total;
        const double right = rows[i + 1].intensity_total;
        if (!(mid > left && mid >= right)) continue;

        const double curvature = left - 2.0 * mid + right;
        double offset = 0.0; // in grid steps
        if (curvature < 0) offset = std::clamp(0.5 * (left - right) / curvature, -0.5, 0.5);
        const double step = 0.5 * (rows[i + 1].beta - rows[i - 1].beta);

        Peak peak;
        peak.beta = rows[i].beta + offset * step;
        peak.intensity = mid - 0.25 * (left - right) * offset;
        if (order_scale > 0) {
            const double order = std::sin(peak.beta) * order_scale;
            const double nearest = std::round(order);
            if (std::abs(order - nearest) <= 0.25) peak.order_index = static_cast<int>(nearest);
        }
        peaks.push_back(peak);
    }
    return peaks;
}

struct OrderAngle {
    int order = 0;
    double beta = 0.0;
};

/// Directions of the two-slit maxima, sin(beta_j) = j lambda / (a + d), for 1 <= j <= j_max.
inline std::vector<OrderAngle> two_slit_order_angles(const SimConfig& cfg, int j_max) {
    const double spacing = wavelength(cfg) / (cfg.slits.width_a + cfg.slits.separation_d);
    const double limit = std::sin(cfg.detector.beta_max);
    std::vector<OrderAngle> out;
    for (int j = 1; j <= j_max; ++j) {
        const double s = j * spacing;
        if (!(s < limit) || !(s < 1.0)) break;
        const double beta = std::asin(s);
        if (!direction_is_valid(cfg.beam.alpha, beta)) break;
        out.push_back({j, beta});
    }
    return out;
}

struct OrderRow {
    int order = 0;
    double beta = 0.0;
    double intensity = 0.0;
    bool missing_analytic = false;
    bool missing_numeric = false;
};

struct MissingOrderReport {
    double ratio = 0.0; // (d + a) / a
    std::vector<int> analytic_missing;
    std::vector<int> numeric_missing;
    double suppression_threshold = 0.05;
    std::vector<OrderRow> orders; // every order inside the scan
};

inline constexpr double kDefaultSuppressionThreshold = 0.05;

namespace detail {

/// Linear interpolation of intensity_total at beta (rows sorted by beta).
inline double interpolate_intensity(const std::vector<ScanRow>& rows, double beta) {
    auto it = std::lower_bound(rows.begin(), rows.end(), beta,
                               [](const ScanRow& r, double b) { return r.beta < b; });
    if (it == rows.begin()) return it->intensity_total;
    if (it == rows.end()) return rows.back().intensity_total;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (beta - lo.beta) / (hi.beta - lo.beta);
    return lo.intensity_total + t * (hi.intensity_total - lo.intensity_total);
}

inline bool integer_ratio(double ratio, int& n) {
    const double nearest = std::round(ratio);
    if (nearest < 1 || std::abs(ratio - nearest) > 1e-9 * ratio) return false;
    n = static_cast<int>(nearest);
    return true;
}

} // namespace detail

/**
 * Compare the analytically expected missing orders with what the scan shows.
 *
 * An order j counts as numerically missing when the intensity at beta_j is
 * below threshold times the median of the neighbouring order peaks j-1 and
 * j+1 (order 0 is the central maximum). A neighbour peak is the largest
 * sample within a quarter order spacing of its nominal direction. Orders are
 * taken on whichever side of beta = 0 the scan covers more of.
 */
inline MissingOrderReport missing_orders(const SimConfig& cfg, const DiffractionScan& scan,
                                         double threshold = kDefaultSuppressionThreshold) {
    if (!(threshold > 0 && threshold < 1))
        throw std::invalid_argument("missing_orders: threshold must lie in (0, 1)");
    if (!(scan.config_echo == cfg))
        throw std::invalid_argument("missing_orders: scan was computed for a different config");
    if (scan.rows.empty()) throw std::invalid_argument("missing_orders: empty scan");

    const auto& det = cfg.detector;
    const double a = cfg.slits.width_a, d = cfg.slits.separation_d;
    const double spacing = wavelength(cfg) / (a + d); // in sin(beta)
    const double side = det.beta_max >= -det.beta_min ? 1.0 : -1.0;

    MissingOrderReport report;
    report.ratio = (d + a) / a;
    report.suppression_threshold = threshold;

    auto order_beta = [&](int j) -> std::optional<double> {
        const double s = j * spacing;
        if (!(s < 1.0)) return std::nullopt;
        const double beta = side * std::asin(s);
        if (beta < det.beta_min || beta > det.beta_max) return std::nullopt;
        if (!direction_is_valid(cfg.beam.alpha, beta)) return std::nullopt;
        return beta;
    };
    auto neighbour_peak = [&](int j) -> std::optional<double> {
        const auto beta = order_beta(j);
        if (!beta) return std::nullopt;
        const double centre = std::sin(*beta);
        double best = detail::interpolate_intensity(scan.rows, *beta);
        for (const auto& row : scan.rows)
            if (std::abs(std::sin(row.beta) - centre) <= 0.25 * spacing)
                best = std::max(best, row.intensity_total);
        return best;
    };

    int n = 0;
    const bool integer = detail::integer_ratio(report.ratio, n);
    for (int j = 1;; ++j) {
        const auto beta = order_beta(j);
        if (!beta) break;
        OrderRow row;
        row.order = j;
        row.beta = *beta;
        row.intensity = detail::interpolate_intensity(scan.rows, *beta);
        row.missing_analytic = integer && j % n == 0;

        std::vector<double> neighbours;
        for (int i : {j - 1, j + 1})
            if (auto v = neighbour_peak(i)) neighbours.push_back(*v);
        if (!neighbours.empty()) {
            std::sort(neighbours.begin(), neighbours.end());
            const std::size_t h = neighbours.size() / 2;
            const double median = neighbours.size() % 2 ? neighbours[h]
                                                        : 0.5 * (neighbours[h - 1] + neighbours[h]);
            row.missing_numeric = row.intensity < threshold * median;
        }
        if (row.missing_analytic) report.analytic_missing.push_back(j);
        if (row.missing_numeric) report.numeric_missing.push_back(j);
        report.orders.push_back(row);
    }
    return report;
}

/// Largest relative deviation of intensity_total from intensity_slit1 * 4cos^2(...).
inline double factorization_audit(const SimConfig& cfg, const DiffractionScan& scan) {
    double worst = 0.0;
    for (const auto& row : scan.rows) {
        const double expected = row.intensity_slit1 * two_slit_factor(row.beta, cfg);
        const double scale = std::max(row.intensity_total, std::numeric_limits<double>::min());
        worst = std::max(worst, std::abs(row.intensity_total - expected) / scale);
    }
    return worst;
}

struct ThicknessPoint {
    double thickness_c = 0.0;
    double central_intensity = 0.0; // intensity_total nearest beta = 0
    double max_peak_intensity = 0.0;
    std::size_t mode_count = 0;
};

struct ThicknessStudy {
    std::vector<ThicknessPoint> points;
    bool peak_growth_observed = false; // max peak strictly increasing with c
};

/// Scan the same geometry at several thicknesses and track peak heights.
inline ThicknessStudy thickness_study(SimConfig cfg, const std::vector<double>& thicknesses) {
    ThicknessStudy study;
    for (double c : thicknesses) {
        cfg.slits.thickness_c = c;
        const auto result = scan(cfg);
        ThicknessPoint point;
        point.thickness_c = c;
        point.mode_count = enumerate_modes(cfg).modes.size();
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& row : result.rows) {
            if (std::abs(row.beta) < nearest) {
                nearest = std::abs(row.beta);
                point.central_intensity = row.intensity_total;
            }
        }
        for (const auto& peak : find_peaks(result))
            point.max_peak_intensity = std::max(point.max_peak_intensity, peak.intensity);
        study.points.push_back(point);
    }
    study.peak_growth_observed = study.points.size() >= 2;
    for (std::size_t i = 1; i < study.points.size(); ++i)
        if (!(study.points[i].max_peak_intensity > study.points[i - 1].max_peak_intensity))
            study.peak_growth_observed = false;
    return study;
}

} // namespace dslit
