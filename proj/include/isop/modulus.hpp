#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "isop/common.hpp"

namespace isop {

/// A modulus of convexity / uniform-log-concavity modulus: delta >= 0,
/// non-decreasing, with t -> delta(t)/t non-decreasing.  Values may be +inf
/// (truncated variant).  Immutable after construction.
class ModulusSpec {
public:
    enum class Kind { zero, power, table, truncated };
    enum class TableExtension { ratio_linear, ratio_constant };

    static ModulusSpec zero() { return ModulusSpec(Kind::zero); }

    static ModulusSpec power(double alpha, double p) {
        if (!(alpha > 0.0)) throw PreconditionError("ModulusSpec::power: alpha must be positive");
        if (!(p >= 2.0)) throw PreconditionError("ModulusSpec::power: p must be >= 2");
        ModulusSpec m(Kind::power);
        m.alpha_ = alpha;
        m.p_ = p;
        return m;
    }

    /// Knots (t_i, delta_i) with 0 < t_1 < t_2 < ..., delta_i >= 0 and
    /// delta_i / t_i non-decreasing.  Evaluation is linear between knots
    /// (which preserves ratio monotonicity) and extends right of the last
    /// knot by the chosen rule on the ratio delta(t)/t.
    static ModulusSpec table(std::vector<std::pair<double, double>> knots,
                             TableExtension ext = TableExtension::ratio_linear) {
        if (knots.empty()) throw PreconditionError("ModulusSpec::table: no knots");
        double prev_t = 0.0, prev_ratio = 0.0;
        bool first = true;
        for (const auto& [t, d] : knots) {
            if (!(t > prev_t)) throw PreconditionError("ModulusSpec::table: knots must increase");
            if (!(d >= 0.0) || !std::isfinite(d))
                throw PreconditionError("ModulusSpec::table: values must be finite and >= 0");
            const double ratio = d / t;
            if (!first && ratio < prev_ratio * (1.0 - 1e-12) - 1e-300)
                throw PreconditionError("ModulusSpec::table: delta(t)/t must be non-decreasing");
            prev_ratio = std::max(prev_ratio, ratio);
            prev_t = t;
            first = false;
        }
        ModulusSpec m(Kind::table);
        m.knots_ = std::move(knots);
        m.ext_ = ext;
        return m;
    }

    /// Agrees with base on [0, cutoff]; +inf beyond.
    static ModulusSpec truncated(ModulusSpec base, double cutoff) {
        if (!(cutoff > 0.0)) throw PreconditionError("ModulusSpec::truncated: cutoff must be > 0");
        ModulusSpec m(Kind::truncated);
        m.base_ = std::make_shared<const ModulusSpec>(std::move(base));
        m.cutoff_ = cutoff;
        return m;
    }

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::zero; }
    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double cutoff() const { return cutoff_; }
    const ModulusSpec& base() const { return *base_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }
    TableExtension extension() const { return ext_; }

    /// delta(t); +inf past a truncation cutoff.
    double eval(double t) const {
        if (!(t >= 0.0)) throw PreconditionError("ModulusSpec::eval: t must be >= 0");
        switch (kind_) {
            case Kind::zero:
                return 0.0;
            case Kind::power:
                return alpha_ * std::pow(t, p_);
            case Kind::table:
                return eval_table(t);
            case Kind::truncated:
                return (t <= cutoff_) ? base_->eval(t) : kInf;
        }
        return 0.0;
    }

    /// Generalized inverse inf{ t >= 0 : delta(t) >= s }; +inf if the level
    /// is never reached.  Truncated moduli invert onto the jump point.
    double inverse(double s) const {
        if (!(s >= 0.0)) throw PreconditionError("ModulusSpec::inverse: s must be >= 0");
        if (s == 0.0) return 0.0;
        switch (kind_) {
            case Kind::zero:
                return kInf;
            case Kind::power:
                return std::pow(s / alpha_, 1.0 / p_);
            case Kind::table:
                return inverse_table(s);
            case Kind::truncated:
                return std::min(base_->inverse(s), cutoff_);
        }
        return kInf;
    }

private:
    explicit ModulusSpec(Kind k) : kind_(k) {}

    double eval_table(double t) const {
        if (t == 0.0) return 0.0;
        const auto& k = knots_;
        if (t <= k.front().first) return k.front().second * t / k.front().first;
        if (t >= k.back().first) {
            const double tk = k.back().first;
            const double rk = k.back().second / tk;
            double slope = 0.0;
            if (ext_ == TableExtension::ratio_linear && k.size() >= 2) {
                const auto& prev = k[k.size() - 2];
                slope = std::max(0.0, (rk - prev.second / prev.first) / (tk - prev.first));
            }
            return t * (rk + slope * (t - tk));
        }
        auto it = std::lower_bound(k.begin(), k.end(), t,
                                   [](const auto& kn, double v) { return kn.first < v; });
        const auto& [t1, d1] = *(it - 1);
        const auto& [t2, d2] = *it;
        return d1 + (d2 - d1) * (t - t1) / (t2 - t1);
    }

    double inverse_table(double s) const {
        const auto& k = knots_;
        if (s <= k.front().second) {
            // segment from (0,0) to the first knot
            return (k.front().second == 0.0) ? k.front().first
                                             : s * k.front().first / k.front().second;
        }
        for (std::size_t i = 1; i < k.size(); ++i) {
            if (s <= k[i].second) {
                const double t1 = k[i - 1].first, d1 = k[i - 1].second;
                const double t2 = k[i].first, d2 = k[i].second;
                if (d2 == d1) return t1;  // flat segment: level set starts at its left end
                return t1 + (s - d1) * (t2 - t1) / (d2 - d1);
            }
        }
        // right extension: delta(t) = t*(rk + m*(t - tk))
        const double tk = k.back().first;
        const double rk = k.back().second / tk;
        double m = 0.0;
        if (ext_ == TableExtension::ratio_linear && k.size() >= 2) {
            const auto& prev = k[k.size() - 2];
            m = std::max(0.0, (rk - prev.second / prev.first) / (tk - prev.first));
        }
        if (m == 0.0) return (rk > 0.0) ? s / rk : kInf;
        const double b = rk - m * tk;
        return (-b + std::sqrt(b * b + 4.0 * m * s)) / (2.0 * m);
    }

    Kind kind_;
    double alpha_ = 0.0, p_ = 0.0;
    double cutoff_ = 0.0;
    std::vector<std::pair<double, double>> knots_;
    TableExtension ext_ = TableExtension::ratio_linear;
    std::shared_ptr<const ModulusSpec> base_;
};

/// c * delta as a ModulusSpec (c > 0); used for the factor-2 bookkeeping
/// between the midpoint and tail conditions.
inline ModulusSpec scaled(const ModulusSpec& m, double c) {
    if (!(c > 0.0)) throw PreconditionError("scaled: factor must be positive");
    switch (m.kind()) {
        case ModulusSpec::Kind::zero:
            return ModulusSpec::zero();
        case ModulusSpec::Kind::power:
            return ModulusSpec::power(c * m.alpha(), m.p());
        case ModulusSpec::Kind::table: {
            auto knots = m.knots();
            for (auto& [t, d] : knots) d *= c;
            return ModulusSpec::table(std::move(knots), m.extension());
        }
        case ModulusSpec::Kind::truncated:
            return ModulusSpec::truncated(scaled(m.base(), c), m.cutoff());
    }
    return ModulusSpec::zero();
}

namespace detail {

/// Lower convex hull (Andrew scan) of points sorted by x; returns vertices.
inline std::vector<std::pair<double, double>> lower_hull(
    std::vector<std::pair<double, double>> pts) {
    std::vector<std::pair<double, double>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            const double cross = (b.first - a.first) * (p.second - a.second) -
                                 (b.second - a.second) * (p.first - a.first);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    return hull;
}

}  // namespace detail

/// Greatest convex minorant of delta on a uniform grid of [0, t_max]
/// (exact for power moduli, which are already convex).  The result keeps the
/// sandwich delta(t/2) <= result(t) <= delta(t) at grid points.
inline ModulusSpec convex_minorant(const ModulusSpec& m, double t_max = 2.0, int grid = 257) {
    switch (m.kind()) {
        case ModulusSpec::Kind::zero:
        case ModulusSpec::Kind::power:
            return m;
        case ModulusSpec::Kind::truncated:
            return ModulusSpec::truncated(convex_minorant(m.base(), m.cutoff(), grid), m.cutoff());
        case ModulusSpec::Kind::table:
            break;
    }
    if (grid < 3) throw PreconditionError("convex_minorant: grid too coarse");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(grid));
    pts.emplace_back(0.0, 0.0);
    for (int i = 1; i < grid; ++i) {
        const double t = t_max * static_cast<double>(i) / (grid - 1);
        pts.emplace_back(t, m.eval(t));
    }
    auto hull = detail::lower_hull(std::move(pts));
    hull.erase(hull.begin());  // drop the (0,0) anchor; table re-adds it implicitly
    if (hull.empty()) return ModulusSpec::zero();
    return ModulusSpec::table(std::move(hull), m.extension());
}

/// p-uniform-convexity constants (p, alpha) of the l_q norm, 1 < q < inf:
/// (2, (q-1)/4) below q = 2 (Ball-Pisier), (q, 2^-q) from q = 2 up (Clarkson).
/// q = 2 is routed to the q >= 2 branch; the two branches agree there.
inline std::pair<double, double> lq_constants(double q) {
    if (!(q > 1.0)) throw PreconditionError("lq_constants: q must exceed 1 (l_1 is not uniformly convex)");
    if (!std::isfinite(q)) throw PreconditionError("lq_constants: q must be finite");
    if (q < 2.0) return {2.0, (q - 1.0) / 4.0};
    return {q, std::exp2(-q)};
}

}  // namespace isop
