// dslit: electron double-slit diffraction simulator.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dslit/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Electron double-slit diffraction: eigenmode expansion + Kirchhoff far field"};

    dslit::RunRequest req;
    std::string mode = "scan";
    int figure = 0;

    app.add_option("--config", req.config_path, "Config file (key = value lines)");
    app.add_option("--out", req.output_path, "Output file (default: standard output)");
    auto* mode_opt = app.add_option("--mode", mode, "scan | oracle-check | missing-orders | figure")
        ->check(CLI::IsMember({"scan", "oracle-check", "missing-orders", "figure"}));
    auto* fig = app.add_option("--figure", figure, "Built-in figure preset, 3-14");
    app.add_flag("--plot", req.plot, "Also write an SVG plot next to --out");
    app.add_option("--threshold", req.threshold, "Missing-order suppression threshold in (0, 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : dslit::kExitValidation;
    }

    // A bare --figure N implies --mode figure.
    if (fig->count() > 0 && mode_opt->count() == 0) mode = "figure";
    req.mode = *dslit::parse_run_mode(mode);
    if (fig->count() > 0) req.figure_id = figure;
    return dslit::run(req);
}
