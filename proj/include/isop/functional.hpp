#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "isop/common.hpp"
#include "isop/density1d.hpp"
#include "isop/quadrature.hpp"

namespace isop {

/// Piecewise-linear test function F: R -> [0, 1] with constant extension
/// beyond its knots; the derivative is piecewise constant, so gradient
/// energies reduce to per-segment closed forms against the density CDF.
class TestFunction1D {
public:
    static TestFunction1D from_knots(std::vector<std::pair<double, double>> knots) {
        if (knots.size() < 2) throw PreconditionError("TestFunction1D: need at least two knots");
        std::sort(knots.begin(), knots.end());
        for (std::size_t i = 1; i < knots.size(); ++i)
            if (!(knots[i].first > knots[i - 1].first))
                throw PreconditionError("TestFunction1D: duplicate knot x");
        for (const auto& [x, v] : knots)
            if (!(v >= 0.0 && v <= 1.0))
                throw PreconditionError("TestFunction1D: values must lie in [0, 1]");
        TestFunction1D f;
        f.knots_ = std::move(knots);
        return f;
    }

    /// 0 on (-inf, u], rising linearly to 1 at v, 1 on [v, inf).
    static TestFunction1D ramp(double u, double v) {
        if (!(v > u)) throw PreconditionError("TestFunction1D::ramp: need v > u");
        return from_knots({{u, 0.0}, {v, 1.0}});
    }

    double operator()(double x) const {
        const auto& k = knots_;
        if (x <= k.front().first) return k.front().second;
        if (x >= k.back().first) return k.back().second;
        const auto it = std::lower_bound(k.begin(), k.end(), x,
                                         [](const auto& kn, double v) { return kn.first < v; });
        const auto& [x2, v2] = *it;
        const auto& [x1, v1] = *(it - 1);
        return v1 + (v2 - v1) * (x - x1) / (x2 - x1);
    }

    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    /// lam * F as a test function (lam in (0, 1] keeps the range valid).
    TestFunction1D scaled(double lam) const {
        if (!(lam > 0.0 && lam <= 1.0))
            throw PreconditionError("TestFunction1D::scaled: lam must be in (0, 1]");
        auto k = knots_;
        for (auto& [x, v] : k) v *= lam;
        TestFunction1D f;
        f.knots_ = std::move(k);
        return f;
    }

    /// mu{F = level} for level 0 or 1: plateau mass under the density,
    /// assembled from the flat segments and the two extensions.
    double plateau_mass(const Density1D& d, double level) const {
        double mass = 0.0;
        const auto& k = knots_;
        if (k.front().second == level) mass += d.cdf(k.front().first);
        if (k.back().second == level) mass += 1.0 - d.cdf(k.back().first);
        for (std::size_t i = 1; i < k.size(); ++i)
            if (k[i].second == level && k[i - 1].second == level)
                mass += d.cdf(k[i].first) - d.cdf(k[i - 1].first);
        return mass;
    }

private:
    std::vector<std::pair<double, double>> knots_;
};

/// int |F'|^q dmu: each linear segment contributes |slope|^q times its mass.
inline double gradient_integral(const TestFunction1D& F, const Density1D& d, double q) {
    if (!(q >= 1.0)) throw PreconditionError("gradient_integral: q must be >= 1");
    const auto& k = F.knots();
    double total = 0.0;
    for (std::size_t i = 1; i < k.size(); ++i) {
        const double slope = (k[i].second - k[i - 1].second) / (k[i].first - k[i - 1].first);
        if (slope == 0.0) continue;
        total += std::pow(std::fabs(slope), q) * (d.cdf(k[i].first) - d.cdf(k[i - 1].first));
    }
    return total;
}

/// Entropy functional int F^q log(F^q / int F^q dmu) dmu, nonnegative by
/// Jensen; satisfies the exact homogeneity entropy_q(lam F) = lam^q entropy_q(F).
inline double entropy_q(const TestFunction1D& F, const Density1D& d, double q) {
    if (!(q >= 1.0)) throw PreconditionError("entropy_q: q must be >= 1");
    const auto& k = F.knots();
    quad::Options opt;
    opt.abs_tol = 1e-15;
    opt.rel_tol = 1e-12;
    auto fq = [&](double x) { return std::pow(F(x), q); };
    auto fq_log = [&](double x) {
        const double v = fq(x);
        return v > 0.0 ? v * std::log(v) : 0.0;
    };
    // segment masses and integrals; plateaus contribute in closed form
    double mass_fq = 0.0;       // int F^q dmu
    double int_fq_log = 0.0;    // int F^q log F^q dmu
    const double lo_mass = d.cdf(k.front().first);
    const double hi_mass = 1.0 - d.cdf(k.back().first);
    mass_fq += std::pow(k.front().second, q) * lo_mass + std::pow(k.back().second, q) * hi_mass;
    if (k.front().second > 0.0) {
        const double v = std::pow(k.front().second, q);
        int_fq_log += v * std::log(v) * lo_mass;
    }
    if (k.back().second > 0.0) {
        const double v = std::pow(k.back().second, q);
        int_fq_log += v * std::log(v) * hi_mass;
    }
    for (std::size_t i = 1; i < k.size(); ++i) {
        const double a = k[i - 1].first, b = k[i].first;
        auto w = [&](double x) { return d.pdf(x); };
        if (k[i].second == k[i - 1].second) {
            const double v = std::pow(k[i].second, q);
            const double m = d.cdf(b) - d.cdf(a);
            mass_fq += v * m;
            if (v > 0.0) int_fq_log += v * std::log(v) * m;
        } else {
            mass_fq += quad::integrate([&](double x) { return fq(x) * w(x); }, a, b, opt);
            int_fq_log += quad::integrate([&](double x) { return fq_log(x) * w(x); }, a, b, opt);
        }
    }
    if (!(mass_fq > 0.0)) throw PreconditionError("entropy_q: F vanishes almost everywhere");
    return int_fq_log - mass_fq * std::log(mass_fq);
}

struct CapacityCheckReport {
    int tested = 0;
    int skipped = 0;  // family members violating the plateau conditions
    bool ok = true;
    double worst_margin = kInf;  // min of LHS - RHS over tested members
    double worst_t = 0.0;
};

/// Hard assertion of the capacity inequality int |F'| dmu >= c0 t log^{1/q}(1/t)
/// for every family member with mu{F=1} = t in (0, 1/2) and mu{F=0} >= 1/2;
/// c0 must be certified for the density (tail condition via the oneD bounds).
inline CapacityCheckReport check_capacity_lower(const Density1D& d, double c0, double q,
                                                const std::vector<TestFunction1D>& family) {
    CapacityCheckReport rep;
    for (const auto& F : family) {
        const double t = F.plateau_mass(d, 1.0);
        const double z = F.plateau_mass(d, 0.0);
        if (!(t > 0.0 && t < 0.5 && z >= 0.5 - 1e-12)) {
            ++rep.skipped;
            continue;
        }
        const double lhs = gradient_integral(F, d, 1.0);
        const double rhs = c0 * t * std::pow(std::log(1.0 / t), 1.0 / q);
        const double margin = lhs - rhs;
        ++rep.tested;
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_t = t;
        }
        if (margin < -1e-9 * (1.0 + std::fabs(rhs))) rep.ok = false;
    }
    return rep;
}

struct EmpiricalFunctionalReport {
    double min_ratio_capacity_q = kInf;  // int|F'|^q dmu / (c0^q t log 1/t)
    double min_ratio_logsob = kInf;      // int|F'|^q dmu / (c0^q entropy_q(F))
    int tested = 0;
    int skipped = 0;
};

/// Empirical universal constants of the q-capacity and q-log-Sobolev forms:
/// the minimum over the family of LHS / (RHS without the universal factor).
/// Positivity is asserted; the values themselves are reported.
inline EmpiricalFunctionalReport empirical_functional_constants(
    const Density1D& d, double c0, double q, const std::vector<TestFunction1D>& family) {
    EmpiricalFunctionalReport rep;
    for (const auto& F : family) {
        const double t = F.plateau_mass(d, 1.0);
        const double z = F.plateau_mass(d, 0.0);
        if (!(t > 0.0 && t < 0.5 && z >= 0.5 - 1e-12)) {
            ++rep.skipped;
            continue;
        }
        const double energy = gradient_integral(F, d, q);
        const double cap_rhs = std::pow(c0, q) * t * std::log(1.0 / t);
        rep.min_ratio_capacity_q = std::min(rep.min_ratio_capacity_q, energy / cap_rhs);
        const double ent = entropy_q(F, d, q);
        if (ent > 0.0)
            rep.min_ratio_logsob =
                std::min(rep.min_ratio_logsob, energy / (std::pow(c0, q) * ent));
        ++rep.tested;
    }
    return rep;
}

/// Dyadic chaining levels 0 = u_1 < ... < u_k = 1 with
/// mu{u_i < F < u_{i+1}} = 2^{-(i+1)}, resolved through the exact CDF; for a
/// ramp F with mu{F=0} = 1/2 and mu{F=1} = 2^-k the masses add up to one.
inline std::vector<double> dyadic_levels(const TestFunction1D& F, const Density1D& d, int k_levels) {
    const auto& knots = F.knots();
    if (knots.size() != 2) throw PreconditionError("dyadic_levels: expects a plain ramp");
    if (k_levels < 2) throw PreconditionError("dyadic_levels: need at least two levels");
    const double u = knots.front().first, v = knots.back().first;
    std::vector<double> levels{0.0};
    double mass_above = 1.0 - d.cdf(u);  // mu{F > u_1 = 0}
    for (int i = 1; i <= k_levels - 2; ++i) {
        mass_above -= std::exp2(-static_cast<double>(i + 1));  // peel mu{u_i < F < u_{i+1}}
        const double x = d.quantile(1.0 - mass_above);
        levels.push_back((x - u) / (v - u));
    }
    levels.push_back(1.0);
    return levels;
}

}  // namespace isop
