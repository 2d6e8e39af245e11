#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "isop/common.hpp"
#include "isop/quadrature.hpp"

namespace isop {

/// Monotone CDF cache for a nonnegative weight on [lo, hi]: panel edges with
/// prefix integrals, each panel resolved by GK15 until its error estimate is
/// negligible against the total mass.  Lookup cost is one binary search plus
/// one partial-panel GK15.
class PanelCdf {
public:
    using Weight = std::function<double(double)>;

    static PanelCdf build(Weight w, double lo, double hi, int initial_panels = 64,
                          double rel_tol = 1e-16) {
        if (!(hi > lo)) throw PreconditionError("PanelCdf: empty interval");
        PanelCdf c;
        c.w_ = std::move(w);
        struct Panel {
            double a, b, integral, err;
        };
        std::vector<Panel> panels;
        panels.reserve(static_cast<std::size_t>(initial_panels));
        for (int i = 0; i < initial_panels; ++i) {
            const double a = lo + (hi - lo) * i / initial_panels;
            const double b = lo + (hi - lo) * (i + 1) / initial_panels;
            auto r = quad::gk15(c.w_, a, b);
            panels.push_back({a, b, r.integral, r.error});
        }
        for (int round = 0; round < 24; ++round) {
            double total = 0.0;
            for (const auto& p : panels) total += p.integral;
            const double tol = rel_tol * std::max(std::fabs(total), 1e-300);
            std::vector<Panel> next;
            next.reserve(panels.size() * 2);
            bool split_any = false;
            for (const auto& p : panels) {
                const double mid = 0.5 * (p.a + p.b);
                if (p.err > tol && mid > p.a && mid < p.b && panels.size() < 16384) {
                    auto l = quad::gk15(c.w_, p.a, mid);
                    auto r = quad::gk15(c.w_, mid, p.b);
                    next.push_back({p.a, mid, l.integral, l.error});
                    next.push_back({mid, p.b, r.integral, r.error});
                    split_any = true;
                } else {
                    next.push_back(p);
                }
            }
            panels = std::move(next);
            if (!split_any) break;
        }
        c.edges_.reserve(panels.size() + 1);
        c.cum_.reserve(panels.size() + 1);
        c.edges_.push_back(lo);
        c.cum_.push_back(0.0);
        double acc = 0.0;
        for (const auto& p : panels) {
            acc += p.integral;
            c.edges_.push_back(p.b);
            c.cum_.push_back(acc);
        }
        c.total_ = acc;
        if (!(c.total_ > 0.0) || !std::isfinite(c.total_))
            throw NonIntegrableError("PanelCdf: weight does not integrate to a positive value");
        return c;
    }

    double lo() const { return edges_.front(); }
    double hi() const { return edges_.back(); }
    double total() const { return total_; }

    /// Unnormalized mass on [lo, x], clamped to [0, total] outside.
    double cdf_raw(double x) const {
        if (x <= edges_.front()) return 0.0;
        if (x >= edges_.back()) return total_;
        const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - edges_.begin()) - 1;
        return cum_[i] + quad::gk15(w_, edges_[i], x).integral;
    }

    /// Point with cdf_raw = mass, mass in (0, total); Newton with a
    /// bisection safeguard inside the bracketing panel.
    double quantile_raw(double mass) const {
        if (!(mass > 0.0 && mass < total_))
            throw PreconditionError("PanelCdf::quantile_raw: mass out of range");
        const auto it = std::upper_bound(cum_.begin(), cum_.end(), mass);
        std::size_t i = static_cast<std::size_t>(it - cum_.begin());
        if (i == 0) i = 1;
        if (i >= edges_.size()) i = edges_.size() - 1;
        double a = edges_[i - 1], b = edges_[i];
        const double ca = cum_[i - 1], cb = cum_[i];
        double x = (cb > ca) ? a + (b - a) * (mass - ca) / (cb - ca) : 0.5 * (a + b);
        double lo_x = a, hi_x = b;
        for (int iter = 0; iter < 100; ++iter) {
            const double fx = cdf_raw(x) - mass;
            if (std::fabs(fx) <= 1e-15 * total_) break;
            if (fx > 0.0)
                hi_x = x;
            else
                lo_x = x;
            const double dens = w_(x);
            double nx = (dens > 0.0) ? x - fx / dens : 0.5 * (lo_x + hi_x);
            if (!(nx > lo_x && nx < hi_x)) nx = 0.5 * (lo_x + hi_x);
            if (std::fabs(nx - x) <= 1e-16 * (1.0 + std::fabs(x))) {
                x = nx;
                break;
            }
            x = nx;
        }
        return x;
    }

private:
    Weight w_;
    std::vector<double> edges_;
    std::vector<double> cum_;
    double total_ = 0.0;
};

}  // namespace isop
