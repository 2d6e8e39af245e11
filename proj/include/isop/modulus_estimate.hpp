#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "isop/modulus.hpp"
#include "isop/norms.hpp"
#include "isop/optimize.hpp"
#include "isop/rng.hpp"
#include "isop/rootfind.hpp"

namespace isop {

struct ModulusEstimateSettings {
    int starts = 24;
    int iterations = 600;
    int penalty_rounds = 3;
    double penalty0 = 1e2;
    double penalty_growth = 1e2;
};

struct ModulusEstimatePoint {
    double eps = 0.0;
    double value = 0.0;           // feasible upper estimate of delta_V(eps)
    double best_penalized = 0.0;  // best raw objective seen (diagnostic)
    bool converged = false;
};

namespace detail {

/// Normalize x to the norm's unit sphere (x must be nonzero).
inline Vec to_sphere(const NormSpec& norm, Vec x) {
    const double v = norm(x);
    if (v <= 0.0) throw PreconditionError("to_sphere: zero vector");
    for (double& c : x) c /= v;
    return x;
}

/// Given unit vectors x, y with dist(x,y) < eps, slide y along the normalized
/// circle through x and y toward -x until the constraint |x - y| = eps holds.
/// Works for any norm: the distance at the antipode is 2 >= eps.
inline Vec separate_on_sphere(const NormSpec& norm, const Vec& x, Vec y, double eps) {
    const std::size_t n = x.size();
    const double xe = norm2(x);
    Vec e1 = scaled_vec(x, 1.0 / xe);
    Vec v = sub_vec(y, scaled_vec(e1, dot(y, e1)));
    double ve = norm2(v);
    if (ve < 1e-12) {  // collinear: pick any perpendicular axis
        Vec probe(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            probe.assign(n, 0.0);
            probe[i] = 1.0;
            v = sub_vec(probe, scaled_vec(e1, dot(probe, e1)));
            ve = norm2(v);
            if (ve > 1e-6) break;
        }
    }
    const Vec e2 = scaled_vec(v, 1.0 / ve);
    const double phi0 = std::atan2(dot(y, e2), dot(y, e1));
    auto point_at = [&](double phi) {
        Vec z = add_vec(scaled_vec(e1, std::cos(phi)), scaled_vec(e2, std::sin(phi)));
        return to_sphere(norm, std::move(z));
    };
    auto dist_at = [&](double phi) { return norm(sub_vec(x, point_at(phi))); };
    double lo = phi0, hi = (phi0 <= kPi) ? kPi : -kPi;
    if (dist_at(hi) < eps) return point_at(hi);  // degenerate norm direction; best effort
    const double phi = bisect([&](double t) { return dist_at(t) - eps; }, lo, hi, 200);
    Vec out = point_at(phi);
    // nudge past the constraint so the pair is strictly feasible
    if (norm(sub_vec(x, out)) < eps) {
        const double extra = (hi > lo ? 1.0 : -1.0) * 1e-9;
        out = point_at(phi + extra);
    }
    return out;
}

/// Exact repair: map an arbitrary candidate pair to a feasible one
/// (both on the unit sphere, |x - y| >= eps) and return 1 - |(x+y)/2|.
inline double repair_and_value(const NormSpec& norm, Vec x, Vec y, double eps, Vec* rx = nullptr,
                               Vec* ry = nullptr) {
    if (norm2(x) < 1e-12) x[0] = 1.0;
    if (norm2(y) < 1e-12) y[y.size() - 1] = -1.0;
    x = to_sphere(norm, std::move(x));
    y = to_sphere(norm, std::move(y));
    if (norm(sub_vec(x, y)) < eps) y = separate_on_sphere(norm, x, std::move(y), eps);
    const double value = 1.0 - norm(scaled_vec(add_vec(x, y), 0.5));
    if (rx) *rx = std::move(x);
    if (ry) *ry = std::move(y);
    return value;
}

/// Feasible warm starts built from coordinate pairs: x = a e_i + (eps/2) e_j,
/// y = a e_i - (eps/2) e_j with a solved so x lands on the sphere.  For the
/// l_q family these pairs attain (or nearly attain) the infimum.
inline std::vector<std::pair<Vec, Vec>> structured_pairs(const NormSpec& norm, double eps) {
    const std::size_t n = static_cast<std::size_t>(norm.dim());
    std::vector<std::pair<Vec, Vec>> pairs;
    const std::size_t axes = std::min<std::size_t>(n, 4);
    for (std::size_t i = 0; i < axes; ++i) {
        for (std::size_t j = 0; j < axes; ++j) {
            if (i == j) continue;
            Vec ei(n, 0.0), ej(n, 0.0);
            ei[i] = 1.0;
            ej[j] = 1.0;
            ei = detail::to_sphere(norm, std::move(ei));
            ej = detail::to_sphere(norm, std::move(ej));
            const Vec half = scaled_vec(ej, 0.5 * eps);
            auto norm_at = [&](double a) { return norm(add_vec(scaled_vec(ei, a), half)); };
            if (norm_at(0.0) > 1.0) continue;
            const double a = (norm_at(2.0) < 1.0)
                                 ? 2.0
                                 : bisect([&](double t) { return norm_at(t) - 1.0; }, 0.0, 2.0);
            const Vec base = scaled_vec(ei, a);
            pairs.push_back({add_vec(base, half), sub_vec(base, half)});
        }
    }
    return pairs;
}

}  // namespace detail

/// Upper estimate of the modulus of convexity delta_V at a single eps in
/// (0, 2]: penalized Nelder-Mead multi-start over pairs (structured
/// coordinate-pair seeds plus random seeds), followed by an exact projection
/// onto the constraint set.  Minimization of an infimum, so the returned
/// (feasible) value can only over-estimate delta_V(eps).
inline ModulusEstimatePoint estimate_modulus_point(const NormSpec& norm, double eps,
                                                   const ModulusEstimateSettings& settings,
                                                   RngStream& rng) {
    if (!(eps > 0.0 && eps <= 2.0))
        throw PreconditionError("estimate_modulus_point: eps must be in (0, 2]");
    const std::size_t n = static_cast<std::size_t>(norm.dim());
    ModulusEstimatePoint out;
    out.eps = eps;
    if (n == 1) {
        // every norm on R is a multiple of |.|: the pair (1, 1 - eps) is
        // extremal and the modulus is exactly eps / 2
        out.value = 0.5 * eps;
        out.best_penalized = out.value;
        out.converged = true;
        return out;
    }
    out.value = kInf;
    out.best_penalized = kInf;
    const auto seeds = detail::structured_pairs(norm, eps);
    for (const auto& [sx, sy] : seeds)
        out.value = std::min(out.value, detail::repair_and_value(norm, sx, sy, eps));
    for (int start = 0; start < settings.starts; ++start) {
        Vec z(2 * n);
        for (double& c : z) c = rng.uniform(-1.0, 1.0);
        {  // seed from a feasible configuration
            Vec x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
            Vec y(z.begin() + static_cast<std::ptrdiff_t>(n), z.end());
            detail::repair_and_value(norm, x, y, eps, &x, &y);
            std::copy(x.begin(), x.end(), z.begin());
            std::copy(y.begin(), y.end(), z.begin() + static_cast<std::ptrdiff_t>(n));
        }
        double mu = settings.penalty0;
        for (int round = 0; round < settings.penalty_rounds; ++round) {
            auto objective = [&](const Vec& w) {
                std::span<const double> x(w.data(), n);
                std::span<const double> y(w.data() + n, n);
                const Vec mid = scaled_vec(add_vec(x, y), 0.5);
                const double raw = 1.0 - norm(mid);
                const double cx = std::max(0.0, norm(x) - 1.0);
                const double cy = std::max(0.0, norm(y) - 1.0);
                const double cd = std::max(0.0, eps - norm(sub_vec(x, y)));
                return raw + mu * (cx * cx + cy * cy + cd * cd);
            };
            auto res = nelder_mead(objective, z, 0.25 / (1.0 + static_cast<double>(round)),
                                   settings.iterations);
            z = res.x;
            out.best_penalized = std::min(out.best_penalized, res.value);
            mu *= settings.penalty_growth;
        }
        Vec x(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n));
        Vec y(z.begin() + static_cast<std::ptrdiff_t>(n), z.end());
        const double feasible = detail::repair_and_value(norm, x, y, eps);
        out.value = std::min(out.value, feasible);
    }
    out.converged = std::isfinite(out.value) &&
                    out.value <= out.best_penalized + 1e-4 * (1.0 + std::fabs(out.best_penalized));
    out.value = std::max(0.0, out.value);
    return out;
}

/// Estimate delta_V on an eps grid and package the result as a Table
/// modulus.  Ratios delta(eps)/eps are rectified by a running maximum so the
/// output is always a valid ModulusSpec; rectification can only raise values,
/// consistent with the upper-estimate contract.
inline ModulusSpec estimate_norm_modulus(const NormSpec& norm, std::vector<double> eps_grid,
                                         const ModulusEstimateSettings& settings, std::uint64_t seed,
                                         std::vector<ModulusEstimatePoint>* detail_out = nullptr) {
    if (eps_grid.empty()) throw PreconditionError("estimate_norm_modulus: empty grid");
    std::sort(eps_grid.begin(), eps_grid.end());
    RngStream rng(seed, 0);
    std::vector<ModulusEstimatePoint> pts;
    pts.reserve(eps_grid.size());
    for (double eps : eps_grid) pts.push_back(estimate_modulus_point(norm, eps, settings, rng));
    double ratio = 0.0;
    std::vector<std::pair<double, double>> knots;
    knots.reserve(pts.size());
    for (auto& p : pts) {
        ratio = std::max(ratio, p.value / p.eps);
        knots.emplace_back(p.eps, ratio * p.eps);
    }
    if (detail_out) *detail_out = std::move(pts);
    return ModulusSpec::table(std::move(knots));
}

}  // namespace isop
