#pragma once

// Adaptive Simpson quadrature for complex and complex-vector integrands.
//
// This is the independent numerical reference the closed forms are checked
// against, so it deliberately knows nothing about them.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <limits>
#include <string>
#include <valarray>

namespace dslit {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(double lo, double hi, const std::string& what)
        : std::runtime_error(what + " on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lo_(lo), hi_(hi) {}

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_, hi_;
};

template <class T>
struct QuadratureResult {
    T value{};
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr int kMaxSimpsonDepth = 60;

namespace detail {

inline double error_norm(std::complex<double> v) { return std::abs(v); }

inline double error_norm(const std::valarray<std::complex<double>>& v) {
    double worst = 0.0;
    for (const auto& x : v) worst = std::max(worst, std::abs(x));
    return worst;
}

template <class T, class F>
class SimpsonIntegrator {
public:
    explicit SimpsonIntegrator(F& f) : f_(f) {}

    T eval(double x) {
        ++evaluations;
        return f_(x);
    }

    // Integrates [lo, hi] given f at lo, mid, hi and the coarse Simpson estimate.
    T refine(double lo, double hi, const T& flo, const T& fmid, const T& fhi, const T& whole,
             double tol, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid);
        const double rmid = 0.5 * (mid + hi);
        if (!(lo < lmid && lmid < mid && mid < rmid && rmid < hi))
            throw QuadratureError(lo, hi, "interval collapsed below floating-point resolution");

        const T flm = eval(lmid);
        const T frm = eval(rmid);
        const double h = (hi - lo) / 12.0;
        T left = (flo + 4.0 * flm + fmid) * h;
        T right = (fmid + 4.0 * frm + fhi) * h;
        T sum = left + right;
        T diff = sum - whole;
        const double delta = error_norm(diff);
        // Differences below this are rounding noise: sample error plus the
        // misplacement of nodes quantized to the grid of representable x.
        const double eps = std::numeric_limits<double>::epsilon();
        const double fmax = std::max({error_norm(flo), error_norm(flm), error_norm(fmid),
                                      error_norm(frm), error_norm(fhi)});
        const double noise = fmax * eps * (64.0 * (hi - lo) + 8.0 * std::max(std::abs(lo), std::abs(hi)));
        if (delta <= std::max(15.0 * tol, noise)) {
            error += delta / 15.0;
            return sum + diff / 15.0;
        }
        if (depth >= kMaxSimpsonDepth)
            throw QuadratureError(lo, hi, "recursion depth exhausted");
        T lv = refine(lo, mid, flo, flm, fmid, left, 0.5 * tol, depth + 1);
        T rv = refine(mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth + 1);
        return lv + rv;
    }

    std::size_t evaluations = 0;
    double error = 0.0;

private:
    F& f_;
};

} // namespace detail

/**
 * Adaptive Simpson over [lo, hi] split into `panels` equal starting panels.
 *
 * `tol` is an absolute tolerance on the whole integral, shared between
 * panels in proportion to their width. T must support +, -, scaling by
 * double and detail::error_norm.
 */
template <class T, class F>
QuadratureResult<T> adaptive_simpson(F&& f, double lo, double hi, double tol, int panels = 1) {
    if (!(lo < hi)) throw std::invalid_argument("adaptive_simpson: need lo < hi");
    if (!(tol > 0)) throw std::invalid_argument("adaptive_simpson: need tol > 0");
    panels = std::max(panels, 1);

    detail::SimpsonIntegrator<T, std::remove_reference_t<F>> integ(f);
    const double width = (hi - lo) / panels;
    const double panel_tol = tol / panels;

    T f_left = integ.eval(lo);
    T total{};
    bool first = true;
    for (int i = 0; i < panels; ++i) {
        const double a = lo + width * i;
        const double b = i + 1 == panels ? hi : lo + width * (i + 1);
        const T f_mid = integ.eval(0.5 * (a + b));
        const T f_right = integ.eval(b);
        const T whole = (f_left + 4.0 * f_mid + f_right) * ((b - a) / 6.0);
        T part = integ.refine(a, b, f_left, f_mid, f_right, whole, panel_tol, 0);
        if (first) {
            total = std::move(part);
            first = false;
        } else {
            total += part;
        }
        f_left = f_right;
    }
    return {std::move(total), integ.error, integ.evaluations};
}

/// Complex-valued adaptive Simpson; the contract used by every scalar oracle.
template <class F>
QuadratureResult<std::complex<double>> integrate_1d(F&& f, double lo, double hi, double tol,
                                                    int panels = 1) {
    return adaptive_simpson<std::complex<double>>(std::forward<F>(f), lo, hi, tol, panels);
}

} // namespace dslit
