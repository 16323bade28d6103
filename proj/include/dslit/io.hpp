#pragma once

// CSV, SVG and report writers for diffraction scans.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "farfield.hpp"

namespace dslit {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kCsvHeader =
    "beta_rad,intensity_total,intensity_slit1,two_slit_factor,intensity_normalized";

namespace detail {

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

inline void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace detail

inline void write_csv(const DiffractionScan& scan, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : scan.rows) {
        out << detail::g17(r.beta) << ',' << detail::g17(r.intensity_total) << ','
            << detail::g17(r.intensity_slit1) << ',' << detail::g17(r.two_slit_factor) << ','
            << detail::g17(r.intensity_normalized) << '\n';
    }
}

inline void write_csv(const DiffractionScan& scan, const std::string& path) {
    auto out = detail::open_output(path);
    write_csv(scan, out);
    detail::finish(out, path);
}

/// Read rows back from a file produced by write_csv.
inline std::vector<ScanRow> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw IoError("'" + path + "': bad CSV header");
    std::vector<ScanRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ScanRow r;
        double* fields[] = {&r.beta, &r.intensity_total, &r.intensity_slit1, &r.two_slit_factor,
                            &r.intensity_normalized};
        std::size_t pos = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            const auto comma = line.find(',', pos);
            const auto token = line.substr(pos, comma == std::string::npos ? comma : comma - pos);
            *fields[i] = dslit::detail::parse_double(token, "csv");
            pos = comma == std::string::npos ? line.size() : comma + 1;
        }
        rows.push_back(r);
    }
    return rows;
}

/**
 * Standalone 800x600 SVG of intensity_normalized against beta.
 * Output depends only on the rows, so identical scans give identical bytes.
 */
inline void write_plot(const DiffractionScan& scan, std::ostream& out) {
    const auto& rows = scan.rows;
    if (rows.size() < 2) throw std::invalid_argument("write_plot: need at least 2 rows");

    constexpr double width = 800, height = 600;
    constexpr double left = 80, right = 30, top = 30, bottom = 70;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    const double b0 = rows.front().beta, b1 = rows.back().beta;
    auto px = [&](double beta) { return left + (beta - b0) / (b1 - b0) * plot_w; };
    auto py = [&](double v) { return top + (1.0 - v) * plot_h; };

    char buf[96];
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<path d=\"M%.3f %.3f H%.3f M%.3f %.3f V%.3f\" stroke=\"black\" fill=\"none\"/>\n",
                  left, top + plot_h, left + plot_w, left, top + plot_h, top);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.3f\" y=\"%.3f\" font-size=\"16\" text-anchor=\"middle\">beta(rad)</text>\n",
                  left + 0.5 * plot_w, height - 20);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.3f\" y=\"%.3f\" font-size=\"16\" text-anchor=\"middle\">I</text>\n", 30.0,
                  top + 0.5 * plot_h);
    out << buf;
    for (double beta : {b0, b1}) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.3f\" y=\"%.3f\" font-size=\"12\" text-anchor=\"middle\">%.4g</text>\n",
                      px(beta), top + plot_h + 20, beta);
        out << buf;
    }
    for (double v : {0.0, 1.0}) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.3f\" y=\"%.3f\" font-size=\"12\" text-anchor=\"end\">%.0f</text>\n",
                      left - 8, py(v) + 4, v);
        out << buf;
    }

    out << "<polyline fill=\"none\" stroke=\"#1f4e9e\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", i ? " " : "", px(rows[i].beta),
                      py(rows[i].intensity_normalized));
        out << buf;
    }
    out << "\"/>\n</svg>\n";
}

inline void write_plot(const DiffractionScan& scan, const std::string& path) {
    auto out = detail::open_output(path);
    write_plot(scan, out);
    detail::finish(out, path);
}

/// Plain-text summary followed by per-order CSV rows.
inline void write_report(const MissingOrderReport& report, std::ostream& out) {
    auto list = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s.empty() ? std::string("none") : s;
    };
    out << "# ratio (d+a)/a = " << detail::g17(report.ratio) << '\n'
        << "# suppression threshold = " << detail::g17(report.suppression_threshold) << '\n'
        << "# analytic missing orders: " << list(report.analytic_missing) << '\n'
        << "# numeric missing orders: " << list(report.numeric_missing) << '\n'
        << "order,beta_rad,intensity,missing_analytic,missing_numeric\n";
    for (const auto& r : report.orders) {
        out << r.order << ',' << detail::g17(r.beta) << ',' << detail::g17(r.intensity) << ','
            << (r.missing_analytic ? 1 : 0) << ',' << (r.missing_numeric ? 1 : 0) << '\n';
    }
}

} // namespace dslit
