#pragma once

// Command-line driver: scans, oracle cross-checks, missing-order reports
// and built-in figure presets. Kept in a header so tests can call run()
// directly as well as through the executable.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "analysis.hpp"
#include "config.hpp"
#include "farfield.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "presets.hpp"

namespace dslit {

enum class RunMode { scan, oracle_check, missing_orders, figure };

enum ExitStatus : int { kExitOk = 0, kExitValidation = 1, kExitResidual = 2 };

struct RunRequest {
    std::string config_path;
    std::string output_path; // empty: standard output
    RunMode mode = RunMode::scan;
    std::optional<int> figure_id;
    bool plot = false;
    double threshold = kDefaultSuppressionThreshold;
};

inline std::optional<RunMode> parse_run_mode(const std::string& name) {
    if (name == "scan") return RunMode::scan;
    if (name == "oracle-check") return RunMode::oracle_check;
    if (name == "missing-orders") return RunMode::missing_orders;
    if (name == "figure") return RunMode::figure;
    return std::nullopt;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

inline std::string svg_path_for(const std::string& out) {
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return out.substr(0, dot) + ".svg";
    return out + ".svg";
}

/// Writes through `emit` to the output file, or to stdout when none is given.
template <class Emit>
void emit_output(const std::string& path, Emit&& emit) {
    if (path.empty()) {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    auto out = open_output(path);
    emit(out);
    finish(out, path);
}

inline void write_oracle_table(const std::vector<OracleCheckRow>& rows, std::ostream& out) {
    out << "check,beta_rad,closed_re,closed_im,oracle_re,oracle_im,relative_residual,tolerance,pass\n";
    for (const auto& r : rows) {
        out << r.check << ',' << g17(r.beta) << ',' << g17(r.closed_form.real()) << ','
            << g17(r.closed_form.imag()) << ',' << g17(r.oracle.real()) << ','
            << g17(r.oracle.imag()) << ',' << g17(r.relative_residual) << ',' << g17(r.tolerance)
            << ',' << (r.passed() ? 1 : 0) << '\n';
    }
}

} // namespace detail

/// Exit status for an oracle table, logging every failing row.
inline int residual_status(const std::vector<OracleCheckRow>& rows, std::ostream& log) {
    bool ok = true;
    for (const auto& r : rows) {
        if (!r.passed()) {
            ok = false;
            log << "residual " << r.relative_residual << " exceeds " << r.tolerance << " (" << r.check
                << " at beta = " << r.beta << ")\n";
        }
    }
    return ok ? kExitOk : kExitResidual;
}

inline void validate(const RunRequest& req) {
    if (req.figure_id.has_value() != (req.mode == RunMode::figure))
        throw std::invalid_argument("--figure is required with, and only with, --mode figure");
    if (req.mode != RunMode::figure && req.config_path.empty())
        throw std::invalid_argument("--config is required for this mode");
    if (!(req.threshold > 0 && req.threshold < 1))
        throw std::invalid_argument("--threshold must lie in (0, 1)");
    if (req.plot && req.output_path.empty())
        throw std::invalid_argument("--plot needs --out to name the SVG file");
}

/**
 * Execute one request. Returns 0 on success, 1 on validation or IO
 * failure, 2 when an oracle residual exceeds its tolerance. Diagnostics go
 * to `log`.
 */
inline int run(const RunRequest& req, std::ostream& log = std::cerr) {
    try {
        validate(req);
        const SimConfig cfg = req.mode == RunMode::figure
                                  ? figure_config(*req.figure_id)
                                  : parse_config(detail::read_file(req.config_path));

        switch (req.mode) {
        case RunMode::scan: {
            const auto result = scan(cfg);
            if (result.truncation_overflow)
                log << "warning: mode caps m_max/n_max truncate modes above the drop tolerance\n";
            detail::emit_output(req.output_path, [&](std::ostream& o) { write_csv(result, o); });
            if (req.plot) write_plot(result, detail::svg_path_for(req.output_path));
            return kExitOk;
        }
        case RunMode::oracle_check: {
            const auto rows = oracle_check(cfg);
            detail::emit_output(req.output_path,
                                [&](std::ostream& o) { detail::write_oracle_table(rows, o); });
            return residual_status(rows, log);
        }
        case RunMode::missing_orders: {
            const auto result = scan(cfg);
            const auto report = missing_orders(cfg, result, req.threshold);
            detail::emit_output(req.output_path, [&](std::ostream& o) { write_report(report, o); });
            return kExitOk;
        }
        case RunMode::figure: {
            const auto result = scan(cfg);
            const auto report = missing_orders(cfg, result, req.threshold);
            if (req.output_path.empty()) {
                write_report(report, std::cout);
                std::cout.flush();
            } else {
                write_csv(result, req.output_path);
                auto out = detail::open_output(req.output_path + ".report.txt");
                write_report(report, out);
                detail::finish(out, req.output_path + ".report.txt");
                if (req.plot) write_plot(result, detail::svg_path_for(req.output_path));
            }
            return kExitOk;
        }
        }
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}

} // namespace dslit
