#pragma once

#include <cmath>
#include <functional>
#include <utility>

#include "isop/common.hpp"

namespace isop {

/// Bisection for f(lo) <= 0 <= f(hi) (or the reverse); returns the root.
template <class F>
double bisect(const F& f, double lo, double hi, int iters = 200, double xtol = 0.0) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    const bool rising = flo < 0.0;
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == rising)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= xtol) break;
    }
    return 0.5 * (lo + hi);
}

/// Inverse of an increasing function: smallest bracket by doubling from x0,
/// then bisection.  Returns +inf when no finite bracket is found.
template <class F>
double invert_increasing(const F& f, double target, double x0 = 1.0, double x_max = 1e18,
                         int iters = 200) {
    double hi = x0;
    double fhi = f(hi);
    if (fhi >= target) {
        double lo = hi;
        while (lo > 1e-300 && f(lo) >= target) {
            hi = lo;
            lo *= 0.5;
        }
        if (f(lo) >= target) return 0.0;
        return bisect([&](double x) { return f(x) - target; }, lo, hi, iters);
    }
    while (fhi < target) {
        if (hi > x_max) return kInf;
        hi *= 2.0;
        fhi = f(hi);
    }
    return bisect([&](double x) { return f(x) - target; }, hi * 0.5, hi, iters);
}

/// Golden-section maximization of a unimodal function on [lo, hi].
template <class F>
double maximize_unimodal(const F& f, double lo, double hi, int iters = 200) {
    const double phi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && b - a > 1e-14 * (1.0 + std::fabs(a) + std::fabs(b)); ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace isop
