#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "isop/common.hpp"
#include "isop/density1d.hpp"
#include "isop/modulus.hpp"
#include "isop/quadrature.hpp"
#include "isop/rng.hpp"
#include "isop/rootfind.hpp"

namespace isop {

/// M_delta = int_0^inf exp(-delta); +inf for the zero modulus.  The interval
/// past delta >= 64 contributes less than (T/64) e^-64 by the ratio
/// monotonicity of delta and is added as a closed-form envelope.
inline double modulus_tail_integral(const ModulusSpec& delta) {
    if (delta.is_zero()) return kInf;
    double T = delta.inverse(64.0);
    if (delta.kind() == ModulusSpec::Kind::truncated) T = std::min(T, delta.cutoff());
    if (!std::isfinite(T)) return kInf;  // flat table: effectively no modulus
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-14;
    double m = quad::integrate([&](double t) { return std::exp(-delta.eval(t)); }, 0.0, T, opt);
    if (delta.kind() != ModulusSpec::Kind::truncated && delta.eval(T) < kInf)
        m += (T / 64.0) * std::exp(-64.0);
    return m;
}

/// C_delta = (e-1) / (2e max(delta(M_delta), 1)).
inline double prop1d_constant(const ModulusSpec& delta) {
    const double M = modulus_tail_integral(delta);
    if (!std::isfinite(M)) return (kE - 1.0) / (2.0 * kE);
    double dM = delta.eval(M);
    if (delta.kind() == ModulusSpec::Kind::truncated && M >= delta.cutoff())
        dM = delta.base().eval(delta.cutoff());
    return (kE - 1.0) / (2.0 * kE * std::max(dM, 1.0));
}

/// Isoperimetric lower bound for a 1D density whose potential dominates the
/// modulus in the tail sense g(x) - g(0) >= delta(|x|):
/// C_delta * a~ * gamma(log 1/a~) with gamma(t) = t / delta^-1(t).
inline ProfilePoint bound_prop1d(const ModulusSpec& delta, double a) {
    if (!(a > 0.0 && a < 1.0)) throw PreconditionError("bound_prop1d: mass must be in (0,1)");
    const double at = std::min(a, 1.0 - a);
    if (delta.is_zero()) return {a, at, 0.0};
    const double L = std::log(1.0 / at);
    const double dinv = delta.inverse(L);
    if (!std::isfinite(dinv)) return {a, at, 0.0};
    const double C = prop1d_constant(delta);
    return {a, at, C * at * L / dinv};
}

/// log of phi(t) = int_0^inf exp(t x - D(x)) dx for D = the given modulus
/// (callers pass the doubled midpoint modulus).  Carried in log space; throws
/// NotUniformlyConvexError when the integral diverges.
inline double log_phi_integral(const ModulusSpec& D, double t) {
    if (D.is_zero()) throw NotUniformlyConvexError("phi integral diverges for the zero modulus");
    auto expo = [&](double x) { return t * x - D.eval(x); };
    double U;
    if (D.kind() == ModulusSpec::Kind::truncated) {
        U = D.cutoff();
    } else {
        U = 1.0;
        double peak = 0.0;
        while (true) {
            const double s = expo(U);
            if (std::isinf(s) && s < 0.0) break;
            if (s <= peak - 200.0) break;
            peak = std::max(peak, s);
            U *= 2.0;
            if (U > 1e15)
                throw NotUniformlyConvexError("phi integral diverges: modulus grows too slowly");
        }
    }
    // exponent shift from a coarse scan; the peak is only used for scaling
    double smax = -kInf;
    const int scan = 512;
    for (int i = 0; i <= scan; ++i) {
        const double s = expo(U * i / scan);
        if (std::isfinite(s)) smax = std::max(smax, s);
    }
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-13;
    const double I = quad::integrate(
        [&](double x) {
            const double s = expo(x) - smax;
            return (s < -745.0) ? 0.0 : std::exp(s);
        },
        0.0, U, opt);
    return smax + std::log(I);
}

/// psi(t) = t phi(t); strictly increasing from 0.  Inverse by bracket
/// doubling from t = 1 then bisection (relative tolerance ~1e-12), in log
/// space throughout.
inline double psi_inverse(const ModulusSpec& D, double target) {
    if (!(target > 0.0)) return 0.0;
    const double lt = std::log(target);
    auto log_psi = [&](double t) { return std::log(t) + log_phi_integral(D, t); };
    double hi = 1.0;
    double lo = 0.0;
    if (log_psi(hi) >= lt) {
        lo = hi * 0.5;
        while (log_psi(lo) > lt) {
            hi = lo;
            lo *= 0.5;
            if (lo < 1e-300) return 0.0;
        }
    } else {
        lo = hi;
        while (log_psi(hi) < lt) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e300) throw Error("psi_inverse: bracket failure");
        }
    }
    for (int i = 0; i < 120; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_psi(mid) < lt)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

/// Isoperimetric lower bound under the full midpoint condition with modulus
/// delta: a~ * psi^-1(1 / (2 a~)), where psi uses the doubled modulus.
inline ProfilePoint bound_propnew(const ModulusSpec& delta, double a) {
    if (!(a > 0.0 && a < 1.0)) throw PreconditionError("bound_propnew: mass must be in (0,1)");
    const double at = std::min(a, 1.0 - a);
    const ModulusSpec D = delta.is_zero() ? delta : scaled(delta, 2.0);
    if (D.is_zero()) throw NotUniformlyConvexError("bound_propnew: zero modulus");
    return {a, at, at * psi_inverse(D, 1.0 / (2.0 * at))};
}

/// Cheeger-type bound exp(-g(0)) * a~ (with g the potential of the
/// normalized density, so exp(-g(0)) is just the density at its mode).
inline ProfilePoint cheeger_bound(const Density1D& d, double a) {
    if (!(a > 0.0 && a < 1.0)) throw PreconditionError("cheeger_bound: mass must be in (0,1)");
    const double at = std::min(a, 1.0 - a);
    return {a, at, d.pdf(0.0) * at};
}

struct TailConditionReport {
    bool tail_ok = true;
    double tail_worst_margin = kInf;  // min over grid of (g(x)-g(0)) - delta(|x|)
    double tail_worst_x = 0.0;
    int tail_points = 0;
    bool midpoint_ok = true;
    double midpoint_worst_margin = kInf;
    std::pair<double, double> midpoint_worst_pair{0.0, 0.0};
    int midpoint_pairs = 0;
    bool certified() const { return tail_ok && midpoint_ok; }
};

/// Check the tail condition g(x) - g(0) >= delta(|x|) on a grid and the full
/// midpoint condition on seeded random pairs.  Infinite potential values
/// satisfy both conditions trivially.
inline TailConditionReport verify_tail_condition(const Density1D& d, const ModulusSpec& delta,
                                                 int grid_points = 512, int pair_count = 2048,
                                                 std::uint64_t seed = 1) {
    TailConditionReport rep;
    const double lo = std::max(d.support_lo(), d.quantile(1e-9));
    const double hi = std::min(d.support_hi(), d.quantile(1.0 - 1e-9));
    const double g0 = d.g(0.0);
    for (int i = 0; i <= grid_points; ++i) {
        const double x = lo + (hi - lo) * i / grid_points;
        const double lhs = d.g(x) - g0;
        const double rhs = delta.eval(std::fabs(x));
        double margin;
        if (std::isinf(lhs))
            margin = kInf;
        else if (std::isinf(rhs))
            margin = -kInf;
        else
            margin = lhs - rhs;
        ++rep.tail_points;
        if (margin < rep.tail_worst_margin) {
            rep.tail_worst_margin = margin;
            rep.tail_worst_x = x;
        }
        if (margin < -1e-9 * (1.0 + std::fabs(lhs))) rep.tail_ok = false;
    }
    RngStream rng(seed, 0);
    for (int i = 0; i < pair_count; ++i) {
        const double x = rng.uniform(lo, hi);
        const double y = rng.uniform(lo, hi);
        const double gx = d.g(x), gy = d.g(y), gm = d.g(0.5 * (x + y));
        const double lhs = 0.5 * (gx + gy) - gm;
        const double rhs = delta.eval(std::fabs(x - y));
        double margin;
        if (std::isinf(lhs) && lhs > 0.0)
            margin = kInf;
        else if (std::isinf(rhs))
            margin = -kInf;
        else
            margin = lhs - rhs;
        ++rep.midpoint_pairs;
        if (margin < rep.midpoint_worst_margin) {
            rep.midpoint_worst_margin = margin;
            rep.midpoint_worst_pair = {x, y};
        }
        if (margin < -1e-9 * (1.0 + std::fabs(lhs))) rep.midpoint_ok = false;
    }
    return rep;
}

/// The constant c0 in the profile bound c0 * a~ * log^{1-1/p}(1/a~) produced
/// by the tail bound for a power modulus: C_delta * alpha^{1/p}.
inline double isoperimetric_constant_power(double alpha, double p) {
    const ModulusSpec delta = ModulusSpec::power(alpha, p);
    return prop1d_constant(delta) * std::pow(alpha, 1.0 / p);
}

}  // namespace isop
