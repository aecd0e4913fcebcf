#pragma once

// Scalar root finding and maximization.

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace vncap {

/// Bisection on [lo, hi] until the bracket is narrower than tol.
/// Throws std::invalid_argument("no sign change") if f(lo) and f(hi) agree in sign.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("no sign change");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ScalarOptimum {
    double x = 0;
    double value = 0;
    std::size_t evaluations = 0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <typename F>
ScalarOptimum golden_section_maximize(F&& f, double lo, double hi, double tol) {
    constexpr double inv_phi = 0.6180339887498949;  // (sqrt 5 - 1) / 2
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    std::size_t evals = 2;
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++evals;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), evals + 1};
}

}  // namespace vncap
