#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isop/bounds1d.hpp"
#include "isop/common.hpp"
#include "isop/modulus.hpp"
#include "isop/quadrature.hpp"
#include "isop/special.hpp"

namespace isop {

/// Default instantiations of the universal constants left free by the
/// theory.  Both are override parameters on the curve builders.
inline constexpr double kUcbSmallSetConstant = kE / (4.0 * (kE - 1.0));
/// Lipschitz-constant ceiling for the radial transport map, taken from the
/// bundled empirical pair study (tools/ reports the measured quotients).
inline constexpr double kDefaultTransportLip = 3.0;

/// A named lower/upper bound curve over the symmetrized mass a~ in (0, 1/2].
struct BoundCurve {
    std::string name;
    std::string provenance;  // short tag of the result the curve implements
    nlohmann::json params;
    std::function<double(double)> eval;

    double operator()(double a_tilde) const { return eval(a_tilde); }
};

namespace detail {

inline void check_a_tilde(double at) {
    if (!(at > 0.0 && at <= 0.5))
        throw PreconditionError("BoundCurve: a~ must be in (0, 1/2]");
}

}  // namespace detail

/// Profile lower bound for measures satisfying the midpoint condition with
/// modulus delta: C * a~ * gamma(log 1/a~), gamma(t) = t / delta^-1(t/2).
/// Implemented by delegating to the 1D tail bound with the doubled modulus;
/// the two routes agree identically.
inline BoundCurve bound_ulc_profile(const ModulusSpec& delta) {
    BoundCurve c;
    c.name = "ulc";
    c.provenance = "ulc-profile";
    c.params = {{"modulus_kind", static_cast<int>(delta.kind())}};
    if (delta.is_zero()) {
        c.eval = [](double at) {
            detail::check_a_tilde(at);
            return 0.0;
        };
        return c;
    }
    const ModulusSpec doubled = scaled(delta, 2.0);
    const double C = prop1d_constant(doubled);
    c.eval = [doubled, C](double at) {
        detail::check_a_tilde(at);
        const double L = std::log(1.0 / at);
        const double dinv = doubled.inverse(L);
        return std::isfinite(dinv) ? C * at * L / dinv : 0.0;
    };
    return c;
}

/// Power-modulus specialization delta = alpha t^p: the universal constant
/// materializes as (e-1)/(2e) * 2^{1/p}, giving
/// c alpha^{1/p} a~ log^{1-1/p}(1/a~).
inline BoundCurve bound_power_profile(double alpha, double p) {
    if (!(p >= 2.0)) throw PreconditionError("bound_power_profile: p must be >= 2");
    if (!(alpha > 0.0)) throw PreconditionError("bound_power_profile: alpha must be positive");
    BoundCurve c = bound_ulc_profile(ModulusSpec::power(alpha, p));
    c.name = "power";
    c.provenance = "power-ulc-profile";
    c.params = {{"alpha", alpha}, {"p", p}, {"c", (kE - 1.0) / (2.0 * kE) * std::pow(2.0, 1.0 / p)}};
    return c;
}

/// The Gaussian comparison profile phi(Phi^-1(a~)).
inline BoundCurve bound_bakry_ledoux() {
    BoundCurve c;
    c.name = "bakry_ledoux";
    c.provenance = "gaussian-profile";
    c.params = nlohmann::json::object();
    c.eval = [](double at) {
        detail::check_a_tilde(at);
        return norm_pdf(norm_quantile(at));
    };
    return c;
}

/// Bobkov's log-concave bound
/// (1/2r) [a~ log 1/a~ + (1-a~) log 1/(1-a~) + log mu{|x| <= r}], clamped at
/// zero.  The entropy sum is symmetric in a <-> 1-a, so evaluating at a~
/// agrees with the raw-mass form.
inline BoundCurve bound_bobkov(double r, double ball_mass) {
    if (!(r > 0.0)) throw PreconditionError("bound_bobkov: r must be positive");
    if (!(ball_mass > 0.0 && ball_mass <= 1.0))
        throw PreconditionError("bound_bobkov: ball mass must be in (0, 1]");
    BoundCurve c;
    c.name = "bobkov";
    c.provenance = "bobkov-entropy";
    c.params = {{"r", r}, {"ball_mass", ball_mass}};
    c.eval = [r, ball_mass](double at) {
        detail::check_a_tilde(at);
        const double ent = at * std::log(1.0 / at) + (1.0 - at) * std::log(1.0 / (1.0 - at));
        return std::max(0.0, (ent + std::log(ball_mass)) / (2.0 * r));
    };
    return c;
}

/// Profile bound for the uniform measure on the unit ball of a p-uniformly
/// convex norm with constant alpha: the power-modulus bound transferred
/// through the radial Lipschitz map, whose constant is
/// lip_const * Gamma(1+n/p)^{-1/n}.
inline BoundCurve bound_puc_ball(double alpha, double p, int n,
                                 double lip_const = kDefaultTransportLip) {
    if (!(p >= 2.0)) throw PreconditionError("bound_puc_ball: p must be >= 2");
    if (n < 1) throw PreconditionError("bound_puc_ball: n must be positive");
    if (!(lip_const > 0.0)) throw PreconditionError("bound_puc_ball: lip_const must be positive");
    BoundCurve base = bound_power_profile(alpha, p);
    const double transfer = std::exp(std::lgamma(1.0 + n / p) / n) / lip_const;
    BoundCurve c;
    c.name = "puc_ball";
    c.provenance = "puc-ball-profile";
    c.params = {{"alpha", alpha}, {"p", p}, {"n", n}, {"lip_const", lip_const}};
    c.eval = [base, transfer](double at) { return base.eval(at) * transfer; };
    return c;
}

/// C_{n,delta} = (e-1) / (2e max(n delta(int_0^{1/4} exp(-2 n delta)), 1)).
inline double ucb_constant(const ModulusSpec& delta, int n) {
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-13;
    const double I = quad::integrate(
        [&](double t) { return std::exp(-2.0 * n * delta.eval(t)); }, 0.0, 0.25, opt);
    return (kE - 1.0) / (2.0 * kE * std::max(n * delta.eval(I), 1.0));
}

/// Profile bound for the uniform measure on the unit ball of a uniformly
/// convex norm with modulus of convexity delta:
/// c' C_{n,delta} a~ log(1/a~) / delta^-1(log(1/a~) / 2n).
/// The inverse is the generalized inverse of delta truncated at 1/4, which
/// keeps the formula valid in the small-set regime (where the entropy bound
/// takes over) as a single expression.
inline BoundCurve bound_ucb_profile(const ModulusSpec& delta, int n,
                                    double c_prime = kUcbSmallSetConstant) {
    if (n < 1) throw PreconditionError("bound_ucb_profile: n must be positive");
    if (!std::isfinite(delta.eval(0.25)))
        throw PreconditionError("bound_ucb_profile: delta must be finite on [0, 1/4]");
    const ModulusSpec clipped = ModulusSpec::truncated(delta, 0.25);
    const double C = ucb_constant(delta, n);
    BoundCurve c;
    c.name = "ucb";
    c.provenance = "ucb-profile";
    c.params = {{"n", n}, {"c_prime", c_prime}, {"C_n_delta", C}};
    c.eval = [clipped, C, c_prime, n](double at) {
        detail::check_a_tilde(at);
        const double L = std::log(1.0 / at);
        const double dinv = clipped.inverse(L / (2.0 * n));
        return std::isfinite(dinv) && dinv > 0.0 ? c_prime * C * at * L / dinv : 0.0;
    };
    return c;
}

struct SweepTable {
    std::vector<double> a_grid;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // one per curve
};

inline SweepTable sweep(const std::vector<BoundCurve>& curves, const std::vector<double>& a_grid) {
    if (a_grid.empty()) throw PreconditionError("sweep: empty grid");
    for (double at : a_grid) detail::check_a_tilde(at);
    SweepTable t;
    t.a_grid = a_grid;
    for (const auto& c : curves) {
        t.names.push_back(c.name);
        std::vector<double> col;
        col.reserve(a_grid.size());
        for (double at : a_grid) col.push_back(c.eval(at));
        t.columns.push_back(std::move(col));
    }
    return t;
}

}  // namespace isop
