#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "isop/common.hpp"
#include "isop/modulus.hpp"
#include "isop/norms.hpp"
#include "isop/profile.hpp"
#include "isop/quadrature.hpp"
#include "isop/rootfind.hpp"
#include "isop/sampling.hpp"

namespace isop {

/// The rate function gamma of a profile bound a~ * gamma(log 1/a~), defined
/// on [log 2, inf).  Below log 2 the evaluation follows the convention
/// gamma(y) := gamma(log 1/(1 - e^-y)), which maps back into the domain.
class GammaProfile {
public:
    static GammaProfile from_function(std::function<double(double)> g) {
        GammaProfile p;
        p.gamma_ = std::move(g);
        return p;
    }
    static GammaProfile constant(double c) {
        if (!(c > 0.0)) throw PreconditionError("GammaProfile::constant: c must be positive");
        return from_function([c](double) { return c; });
    }
    /// gamma(y) = c0 y^{1 - 1/p}, the power-profile rate.
    static GammaProfile power_form(double c0, double p) {
        if (!(c0 > 0.0) || !(p >= 1.0))
            throw PreconditionError("GammaProfile::power_form: need c0 > 0, p >= 1");
        return from_function([c0, p](double y) { return c0 * std::pow(y, 1.0 - 1.0 / p); });
    }
    /// Extract the rate from a bound curve: gamma(y) = curve(e^-y) / e^-y.
    static GammaProfile from_curve(const BoundCurve& curve) {
        auto eval = curve.eval;
        return from_function([eval](double y) {
            const double at = std::exp(-y);
            return eval(at) / at;
        });
    }

    /// Evaluate with the below-log2 convention.
    double operator()(double y) const {
        if (y >= std::log(2.0)) return gamma_(y);
        const double mapped = -std::log(-std::expm1(-y));
        return gamma_(mapped);
    }

private:
    std::function<double(double)> gamma_;
};

/// h_a(x) = int_{log 1/a}^x dy / gamma(y); the integrand uses the convention
/// branch whenever the variable dips below log 2 (only possible for a > 1/2).
inline double h_value(const GammaProfile& g, double a, double x) {
    if (!(a > 0.0 && a < 1.0)) throw PreconditionError("h_value: a must be in (0,1)");
    const double lo = std::log(1.0 / a);
    if (!(x >= lo)) throw PreconditionError("h_value: x must be >= log 1/a");
    if (x == lo) return 0.0;
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-11;
    const double v = quad::integrate(
        [&](double y) {
            const double gy = g(y);
            if (!(gy > 0.0)) throw Error("h_value: rate function vanished on the path");
            return 1.0 / gy;
        },
        lo, x, opt);
    return v;
}

/// Inverse of x -> h_a(x) by bracket doubling from the empty-integral point,
/// then bisection to relative tolerance ~1e-9.
inline double h_inverse(const GammaProfile& g, double a, double eps) {
    if (!(eps >= 0.0)) throw PreconditionError("h_inverse: eps must be >= 0");
    const double lo0 = std::log(1.0 / a);
    if (eps == 0.0) return lo0;
    double lo = lo0;
    double step = 1.0;
    double hi = lo0 + step;
    while (h_value(g, a, hi) < eps) {
        lo = hi;
        step *= 2.0;
        hi = lo0 + step;
        if (step > 1e9) throw Error("h_inverse: diverging bracket");
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (h_value(g, a, mid) < eps)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-10 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

/// Concentration upper bound exp(-h_a^-1(eps)) obtained from the profile
/// inequality with rate gamma; a is the complement mass 1 - mu(B).
inline double bound_concentration_profile(const GammaProfile& g, double a, double eps) {
    return std::exp(-h_inverse(g, a, eps));
}

/// Closed-form power-rate concentration bound
/// exp(-[ (log 1/a)^{1/p} + c0 eps / p ]^p), valid for a <= 1/2.
inline double bound_power_concentration(double c0, double p, double a, double eps) {
    if (!(a > 0.0 && a <= 0.5))
        throw PreconditionError("bound_power_concentration: need 0 < a <= 1/2");
    if (!(p >= 1.0) || !(c0 > 0.0))
        throw PreconditionError("bound_power_concentration: need p >= 1, c0 > 0");
    if (!(eps >= 0.0)) throw PreconditionError("bound_power_concentration: eps must be >= 0");
    const double base = std::pow(std::log(1.0 / a), 1.0 / p) + c0 * eps / p;
    return std::exp(-std::pow(base, p));
}

/// Gromov-Milman enlargement bound (1/lam_B) exp(-2 n delta(eps)); may exceed
/// one in the trivial regime (callers compare curves, no clamping).
inline double bound_gromov_milman(const ModulusSpec& delta, int n, double lam_b, double eps) {
    if (!(lam_b > 0.0 && lam_b < 1.0))
        throw PreconditionError("bound_gromov_milman: base mass must be in (0,1)");
    if (!(eps >= 0.0)) throw PreconditionError("bound_gromov_milman: eps must be >= 0");
    const double d = delta.eval(eps);
    return std::isinf(d) ? 0.0 : std::exp(-2.0 * n * d) / lam_b;
}

/// eps threshold above which the Gromov-Milman bound says something, i.e.
/// drops below the trivial value 1 - lam_b (power modulus form).
inline double gromov_milman_threshold(double alpha_prime, double p, int n, double lam_b) {
    return std::pow(std::log(1.0 / (lam_b * (1.0 - lam_b))) / (2.0 * alpha_prime * n), 1.0 / p);
}

struct GmImprovedBound {
    bool in_range = false;
    double value = kNaN;
    double eps_max = 0.0;  // validity edge (e-1)/(e C') delta^-1(e log(1/a) / 2n)
};

/// Small-eps improvement (1 - lam_B) exp(-2 n delta(C' eps)) with its
/// validity range; delta must be convex (apply convex_minorant first).
/// Returns an out-of-range sentinel instead of extrapolating.
inline GmImprovedBound bound_gm_improved(const ModulusSpec& delta_convex, int n, double c_prime,
                                         double lam_b, double eps) {
    if (!(lam_b > 0.0 && lam_b < 1.0))
        throw PreconditionError("bound_gm_improved: base mass must be in (0,1)");
    if (!(c_prime > 0.0)) throw PreconditionError("bound_gm_improved: c' must be positive");
    GmImprovedBound out;
    const double a = 1.0 - lam_b;
    out.eps_max = (kE - 1.0) / (kE * c_prime) *
                  delta_convex.inverse(kE * std::log(1.0 / a) / (2.0 * n));
    if (eps < 0.0 || eps > out.eps_max) return out;
    const double d = delta_convex.eval(c_prime * eps);
    out.in_range = true;
    out.value = std::isinf(d) ? 0.0 : a * std::exp(-2.0 * n * d);
    return out;
}

/// Half-space enlargement experiment on the unit ball of a norm.  The
/// eps-extension of {x . theta <= t} is exactly {x . theta < t + eps |theta|_*}
/// with the dual norm of the functional, so the Monte Carlo loop only shifts
/// a threshold.
struct EnlargementExperiment {
    NormSpec norm = NormSpec::euclidean(1);
    Vec theta;
    double threshold = 0.0;
    std::vector<double> eps;
    int count = 100000;
    std::uint64_t seed = 1;
    int streams = kDefaultStreams;
    int threads = 1;
};

struct EnlargementCurve {
    std::vector<double> eps;
    std::vector<double> complement;  // empirical 1 - lambda(B_eps)
    std::vector<double> ci_lo, ci_hi;
    double base_mass = 0.0;  // empirical lambda(B)
    double base_ci_lo = 0.0, base_ci_hi = 0.0;
    int count = 0;
    std::uint64_t seed = 0;
    int streams = 0;
};

/// Empirical enlargement curve with binomial (normal-approximation, 95%)
/// confidence bands; all eps values are evaluated on one shared sample so the
/// curve is exactly non-increasing.
inline EnlargementCurve mc_enlargement(const EnlargementExperiment& exp) {
    if (exp.theta.size() != static_cast<std::size_t>(exp.norm.dim()))
        throw PreconditionError("mc_enlargement: direction dimension mismatch");
    if (exp.count < 1) throw PreconditionError("mc_enlargement: need samples");
    EnlargementCurve out;
    out.eps = exp.eps;
    out.count = exp.count;
    out.seed = exp.seed;
    out.streams = exp.streams;
    const double dual = exp.norm.dual(exp.theta);
    const auto batch = sample_uniform_ball(exp.norm, exp.count, exp.seed, exp.streams, exp.threads);
    std::vector<long long> exceed(exp.eps.size(), 0);
    long long in_base = 0;
    for (int i = 0; i < exp.count; ++i) {
        const Vec x = batch.row(i);
        const double s = dot(x, exp.theta);
        if (s <= exp.threshold) ++in_base;
        for (std::size_t k = 0; k < exp.eps.size(); ++k)
            if (s >= exp.threshold + exp.eps[k] * dual) ++exceed[k];
    }
    auto wald = [&](double phat) {
        const double half = 1.96 * std::sqrt(phat * (1.0 - phat) / exp.count);
        return std::pair<double, double>{std::max(0.0, phat - half), std::min(1.0, phat + half)};
    };
    out.base_mass = static_cast<double>(in_base) / exp.count;
    std::tie(out.base_ci_lo, out.base_ci_hi) = wald(out.base_mass);
    for (std::size_t k = 0; k < exp.eps.size(); ++k) {
        const double phat = static_cast<double>(exceed[k]) / exp.count;
        out.complement.push_back(phat);
        auto [lo, hi] = wald(phat);
        out.ci_lo.push_back(lo);
        out.ci_hi.push_back(hi);
    }
    return out;
}

}  // namespace isop
