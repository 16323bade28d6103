#pragma once

// Built-in parameter sets for the twelve reference patterns (figures 3-14).

#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"

namespace dslit {

struct FigurePreset {
    int id;
    double a, b, c, d; // in de Broglie wavelengths
};

inline const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = {
        {3, 1, 1000, 1, 5},      {4, 1, 1000, 1, 5.5},    {5, 5, 1000, 1, 10},
        {6, 5, 1000, 1, 12},     {7, 5, 1000, 1, 25},     {8, 20, 1000, 1, 40},
        {9, 30, 1000, 1, 60},    {10, 50, 1000, 1, 100},  {11, 10, 1000, 0, 20},
        {12, 10, 1000, 10, 20},  {13, 10, 1000, 100, 20}, {14, 10, 1000, 1000, 20},
    };
    return presets;
}

/// Default beam and truncation, beta in [-0.5, 0.5] rad with 2001 steps.
inline SimConfig figure_config(int id, const PhysicalConstants& pc = {}) {
    for (const auto& p : figure_presets()) {
        if (p.id != id) continue;
        SimConfig cfg = default_config(pc);
        const double lambda = wavelength(cfg);
        cfg.slits = {p.a * lambda, p.b * lambda, p.c * lambda, p.d * lambda};
        validate(cfg);
        return cfg;
    }
    throw std::invalid_argument("no built-in preset for figure " + std::to_string(id) +
                                " (expected 3-14)");
}

} // namespace dslit
