#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include "isop/common.hpp"

namespace isop {
namespace quad {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

/// One GK15 panel on [a, b]; error is the usual |K15 - G7| based estimate.
template <class F>
PanelResult gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kKronrodNodes[i];
        fv[i] = f(c - dx);
        fv[14 - i] = f(c + dx);
    }
    double resk = kKronrodWeights[7] * fv[7];
    double resg = kGaussWeights[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kKronrodWeights[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kGaussWeights[i / 2] * (fv[i] + fv[14 - i]);
    }
    const double integral = resk * h;
    double err = std::fabs((resk - resg) * h);
    err = std::pow(200.0 * err, 1.5);
    if (!std::isfinite(err)) err = std::fabs(integral);
    return {integral, std::min(err, std::fabs((resk - resg) * h) * 200.0 + 1e-300)};
}

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_panels = 4000;
};

/// Globally adaptive integration of f over the finite interval [a, b]:
/// repeatedly bisect the panel with the largest error estimate.
template <class F>
double integrate(const F& f, double a, double b, const Options& opt = {}) {
    if (a == b) return 0.0;
    struct Panel {
        double err, a, b, integral;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    std::priority_queue<Panel> heap;
    auto first = gk15(f, a, b);
    heap.push({first.error, a, b, first.integral});
    double total = first.integral;
    double total_err = first.error;
    int panels = 1;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)) &&
           panels < opt.max_panels) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at machine precision
            heap.push({0.0, worst.a, worst.b, worst.integral});
            total_err -= worst.err;
            continue;
        }
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.err;
        heap.push({left.error, worst.a, mid, left.integral});
        heap.push({right.error, mid, worst.b, right.integral});
        ++panels;
    }
    if (!std::isfinite(total)) throw Error("integrate: non-finite integral");
    return total;
}

}  // namespace quad
}  // namespace isop
