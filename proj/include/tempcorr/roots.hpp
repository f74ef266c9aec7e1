#pragma once

#include <cmath>
#include <stdexcept>

namespace tempcorr {

// Bisection on [lo, hi]; f must change sign across the bracket. Returns the
// midpoint of the final bracket with |hi - lo| <= tol.
template <class F>
double bisect(F f, double lo, double hi, double tol = 1e-10, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw std::runtime_error("bisect: no sign change over the bracket");
    }
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Golden-section maximization of a unimodal f on [lo, hi].
template <class F>
double golden_max(F f, double lo, double hi, double tol = 1e-9, int max_iter = 400) {
    constexpr double inv_phi = 0.61803398874989485;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && b - a > tol; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace tempcorr
