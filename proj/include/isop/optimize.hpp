#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "isop/common.hpp"

namespace isop {

struct NelderMeadResult {
    Vec x;
    double value;
    int evaluations;
};

/// Plain Nelder-Mead simplex minimization; good enough for the small
/// penalized problems this library solves (dimension <= ~16).
template <class F>
NelderMeadResult nelder_mead(const F& f, Vec x0, double step, int max_iter = 2000,
                             double ftol = 1e-12) {
    const std::size_t n = x0.size();
    std::vector<Vec> simplex(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    int evals = 0;
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = f(simplex[i]);
        ++evals;
    }
    std::vector<std::size_t> order(n + 1);
    for (int iter = 0; iter < max_iter; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[n], second = order[n - 1];
        if (std::fabs(fv[worst] - fv[best]) <= ftol * (1.0 + std::fabs(fv[best]))) break;
        Vec centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(n);
        auto blend = [&](double t) {
            Vec p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
            return p;
        };
        Vec xr = blend(-1.0);
        const double fr = f(xr);
        ++evals;
        if (fr < fv[order[0]]) {
            Vec xe = blend(-2.0);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                simplex[worst] = std::move(xe);
                fv[worst] = fe;
            } else {
                simplex[worst] = std::move(xr);
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = std::move(xr);
            fv[worst] = fr;
        } else {
            Vec xc = blend(fr < fv[worst] ? -0.5 : 0.5);
            const double fc = f(xc);
            ++evals;
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = std::move(xc);
                fv[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    fv[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
    }
    std::size_t ib = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[ib]) ib = i;
    return {simplex[ib], fv[ib], evals};
}

}  // namespace isop
