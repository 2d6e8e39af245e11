#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "isop/cdfcache.hpp"
#include "isop/common.hpp"
#include "isop/norms.hpp"
#include "isop/optimize.hpp"
#include "isop/quadrature.hpp"
#include "isop/rng.hpp"
#include "isop/rootfind.hpp"
#include "isop/special.hpp"

namespace isop {

/// Log-concave radial profile h with h(0) = 1.
struct RadialProfile {
    enum class Kind { exp_power, trunc_gauss, indicator };

    static RadialProfile exp_power(double p) {
        if (!(p >= 1.0)) throw PreconditionError("RadialProfile::exp_power: p must be >= 1");
        RadialProfile r;
        r.kind = Kind::exp_power;
        r.p = p;
        return r;
    }
    static RadialProfile trunc_gauss(double beta, double R) {
        if (!(beta >= 0.0) || !(R > 0.0))
            throw PreconditionError("RadialProfile::trunc_gauss: need beta >= 0, R > 0");
        RadialProfile r;
        r.kind = Kind::trunc_gauss;
        r.beta = beta;
        r.R = R;
        return r;
    }
    static RadialProfile indicator() {
        RadialProfile r;
        r.kind = Kind::indicator;
        return r;
    }

    double log_h(double r) const {
        switch (kind) {
            case Kind::exp_power:
                return -std::pow(r, p);
            case Kind::trunc_gauss:
                return (r <= R) ? -beta * r * r : -kInf;
            case Kind::indicator:
                return (r <= 1.0) ? 0.0 : -kInf;
        }
        return -kInf;
    }
    double h(double r) const {
        const double l = log_h(r);
        return std::isinf(l) ? 0.0 : std::exp(l);
    }
    bool bounded_support() const { return kind != Kind::exp_power; }
    double support_hi() const {
        switch (kind) {
            case Kind::exp_power:
                return kInf;
            case Kind::trunc_gauss:
                return R;
            case Kind::indicator:
                return 1.0;
        }
        return kInf;
    }

    Kind kind = Kind::indicator;
    double p = 2.0, beta = 1.0, R = 1.0;
};

/// n-dimensional density f(x) = h(|x|)/Z built from a norm and a log-concave
/// radial profile.  Stores the radial law h(r) r^{n-1} as a CDF cache, which
/// makes the transport factor a table lookup.
class RadialDensity {
public:
    static RadialDensity make(int n, NormSpec norm, RadialProfile prof) {
        if (n < 1) throw PreconditionError("RadialDensity: dimension must be positive");
        if (norm.dim() != n) throw PreconditionError("RadialDensity: norm dimension mismatch");
        RadialDensity d;
        d.n_ = n;
        d.norm_ = std::move(norm);
        d.prof_ = prof;
        // midpoint log-concavity spot check of the profile
        for (int i = 1; i < 32; ++i) {
            const double r1 = 0.05 * i, r2 = 0.05 * (i + 7);
            const double lm = prof.log_h(0.5 * (r1 + r2));
            const double avg = 0.5 * (prof.log_h(r1) + prof.log_h(r2));
            if (std::isfinite(avg) && lm < avg - 1e-9)
                throw PreconditionError("RadialDensity: profile is not log-concave");
        }
        d.ball_vol_ = d.norm_.unit_ball_volume();
        d.vol_root_ = std::exp(std::log(d.ball_vol_) / n);
        double cut = prof.support_hi();
        if (!std::isfinite(cut)) {
            // peak of the radial weight, then extend until 64 e-folds down
            auto expo = [&](double r) {
                return prof.log_h(r) + (n - 1) * std::log(std::max(r, 1e-300));
            };
            double hi = 1.0;
            while (expo(2.0 * hi) > expo(hi) && hi < 1e12) hi *= 2.0;
            const double peak = maximize_unimodal(expo, 0.0, 2.0 * hi);
            cut = std::max(2.0 * hi, 2.0 * peak);
            while (expo(cut) > expo(peak) - 64.0) cut *= 1.5;
        }
        const int nn = n;
        const auto profile = prof;
        d.radial_ = std::make_shared<PanelCdf>(PanelCdf::build(
            [profile, nn](double r) {
                return profile.h(r) * std::pow(r, nn - 1);
            },
            0.0, cut, 128));
        d.radial_total_ = d.radial_->total();
        d.Z_ = n * d.ball_vol_ * d.radial_total_;
        return d;
    }

    int dim() const { return n_; }
    const NormSpec& norm() const { return norm_; }
    const RadialProfile& profile() const { return prof_; }
    double Z() const { return Z_; }
    double ball_volume() const { return ball_vol_; }

    double pdf(std::span<const double> x) const { return prof_.h(norm_(x)) / Z_; }
    double f0() const { return 1.0 / Z_; }  // h(0) = 1 for every profile
    double f0_root() const { return std::exp(-std::log(Z_) / n_); }

    /// The Minkowski functional of the transport body: V^{1/n} |x|.
    double gauge(std::span<const double> x) const { return vol_root_ * norm_(x); }

    /// Mass fraction of the radial law on [0, r].
    double radial_cdf(double r) const { return radial_->cdf_raw(r) / radial_total_; }
    double radial_quantile(double mass) const { return radial_->quantile_raw(mass * radial_total_); }

    /// Radial factor u in [0, 1]: the 1/n-th root of the ray mass fraction.
    double u_factor(std::span<const double> x) const {
        const double r = norm_(x);
        if (r == 0.0) return 0.0;
        return std::pow(radial_cdf(r), 1.0 / n_);
    }

    /// The canonical radial map: u(x) x / gauge(x), pushing the density
    /// forward to Lebesgue measure on its transport body.
    Vec transport(std::span<const double> x) const {
        const double r = norm_(x);
        if (r == 0.0) return Vec(static_cast<std::size_t>(n_), 0.0);
        const double scale = u_factor(x) / gauge(x);
        return scaled_vec(x, scale);
    }

    /// One draw: cone-measure direction (normalized independent coordinates
    /// with density ~ exp(-|t|^q)) times an independent radial quantile.
    Vec sample(RngStream& rng) const {
        const double q = norm_.cone_exponent();
        Vec z(static_cast<std::size_t>(n_));
        for (auto& c : z) {
            const double g = gamma_p_inverse(1.0 / q, rng.uniform01());
            c = (rng.coin() ? 1.0 : -1.0) * std::pow(g, 1.0 / q);
        }
        const double nz = norm_(z);
        const double r = radial_quantile(rng.uniform01());
        return scaled_vec(z, r / nz);
    }

private:
    int n_ = 1;
    NormSpec norm_ = NormSpec::euclidean(1);
    RadialProfile prof_;
    double ball_vol_ = 0.0, vol_root_ = 0.0, radial_total_ = 0.0, Z_ = 0.0;
    std::shared_ptr<const PanelCdf> radial_;
};

/// An even log-concave density given by a log-density evaluator; the generic
/// quadrature path for gauges and transport when no radial structure exists.
struct EvenLogConcaveDensity {
    int n;
    std::function<double(std::span<const double>)> log_f;
};

namespace detail {

/// log of int_0^upper f(r x) r^{power} dr for a log-concave f; the integrand
/// exponent is concave in r, so peak search and tail cutoff are safe.
inline double log_radial_integral(const EvenLogConcaveDensity& f, std::span<const double> x,
                                  int power, double upper = kInf) {
    Vec work(x.begin(), x.end());
    auto expo = [&](double r) {
        for (std::size_t i = 0; i < work.size(); ++i) work[i] = x[i] * r;
        return f.log_f(work) + power * std::log(std::max(r, 1e-300));
    };
    double hi = 1.0;
    while (expo(2.0 * hi) > expo(hi) && hi < 1e12) hi *= 2.0;
    if (hi >= 1e12) throw Error("log_radial_integral: divergent ray integral");
    const double peak = maximize_unimodal(expo, 0.0, 2.0 * hi);
    const double m_peak = expo(peak);
    if (!std::isfinite(m_peak)) throw Error("log_radial_integral: vanishing ray");
    double cut = std::max(2.0 * hi, 2.0 * std::max(peak, 1e-6));
    while (std::isfinite(expo(cut)) && expo(cut) > m_peak - 64.0 && cut < 1e14) cut *= 1.5;
    if (std::isinf(expo(cut))) {
        // bounded ray support: the integration limit is the support edge, so
        // the quadrature never sees the density jump
        double lo = peak;
        for (int i = 0; i < 200 && cut - lo > 1e-16 * cut; ++i) {
            const double mid = 0.5 * (lo + cut);
            (std::isfinite(expo(mid)) ? lo : cut) = mid;
        }
        cut = lo;
    }
    cut = std::min(cut, upper);
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-12;
    const double I = quad::integrate(
        [&](double r) {
            const double s = expo(r) - m_peak;
            return (s < -745.0) ? 0.0 : std::exp(s);
        },
        0.0, cut, opt);
    return m_peak + std::log(I);
}

}  // namespace detail

/// Minkowski functional |x|_{K_f} = (n int_0^inf f(r x) r^{n-1} dr)^{-1/n}
/// by adaptive radial quadrature.
inline double kf_gauge(const EvenLogConcaveDensity& f, std::span<const double> x) {
    if (norm2(x) == 0.0) return 0.0;
    const double lJ = detail::log_radial_integral(f, x, f.n - 1);
    return std::exp(-(std::log(static_cast<double>(f.n)) + lJ) / f.n);
}

/// Two-sided gauge max(|x|_{K_f}, |-x|_{K_f}) for densities that are not
/// assumed even (the symmetrized body K_f cap -K_f).
inline double kf_gauge_hat(const EvenLogConcaveDensity& f, std::span<const double> x) {
    const Vec neg = scaled_vec(x, -1.0);
    return std::max(kf_gauge(f, x), kf_gauge(f, neg));
}

/// Radial factor by the generic quadrature path.
inline double u_factor(const EvenLogConcaveDensity& f, std::span<const double> x) {
    if (norm2(x) == 0.0) return 0.0;
    const double l_part = detail::log_radial_integral(f, x, f.n - 1, 1.0);
    const double l_full = detail::log_radial_integral(f, x, f.n - 1);
    return std::exp((l_part - l_full) / f.n);
}

/// The canonical radial map by the generic quadrature path.
inline Vec transport_map(const EvenLogConcaveDensity& f, std::span<const double> x) {
    if (norm2(x) == 0.0) return Vec(static_cast<std::size_t>(f.n), 0.0);
    const double scale = u_factor(f, x) / kf_gauge(f, x);
    return scaled_vec(x, scale);
}

/// Boundary radius of the level-set body {f >= f(0) e^-n} along a ray:
/// the s with g(s theta) = g(0) + n, by monotone root-finding on the convex
/// ray potential.  +inf sentinel when the level set is unbounded.
inline double kf0_radius(const EvenLogConcaveDensity& f, std::span<const double> theta) {
    Vec work(theta.begin(), theta.end());
    const Vec origin(work.size(), 0.0);
    const double target = f.log_f(origin) - f.n;
    auto log_f_at = [&](double s) {
        for (std::size_t i = 0; i < work.size(); ++i) work[i] = theta[i] * s;
        return f.log_f(work);
    };
    double hi = 1.0;
    while (log_f_at(hi) > target) {
        hi *= 2.0;
        if (hi > 1e12) return kInf;
    }
    return bisect([&](double s) { return target - log_f_at(s); }, hi * 0.5, hi, 200);
}

struct BodyComparisonDirection {
    double r_kf = 0.0;   // boundary radius of the transport body
    double r_kf0 = 0.0;  // boundary radius of the level-set body
    double outer_slack = 0.0;  // r_kf / (sup^{1/n} r_kf0), tested against c_outer
    double inner_slack = 0.0;  // f(0)^{1/n} r_kf0 / r_kf, tested against c_inner
};

struct BodyComparisonReport {
    std::vector<BodyComparisonDirection> directions;
    bool outer_ok = true;  // K_f inside c_outer sup^{1/n} K_f^0
    bool inner_ok = true;  // f(0)^{1/n} K_f^0 inside c_inner K_f
    double c_outer = 0.0, c_inner = 0.0;
};

/// Level-set vs transport body comparison for an even density with maximum at
/// the origin (so sup f = f(0)).  Default slacks: the outer constant tends to
/// 1 and is bounded by e for densities with sup f <= e^n f(0); the inner one
/// tends to 2.
inline BodyComparisonReport klartag_milman_check(const EvenLogConcaveDensity& f,
                                                 const std::vector<Vec>& directions,
                                                 double c_outer = kE * 1.01,
                                                 double c_inner = 2.5) {
    BodyComparisonReport rep;
    rep.c_outer = c_outer;
    rep.c_inner = c_inner;
    const Vec origin(static_cast<std::size_t>(f.n), 0.0);
    const double f0_root = std::exp(f.log_f(origin) / f.n);
    for (const auto& th : directions) {
        BodyComparisonDirection d;
        d.r_kf = 1.0 / kf_gauge(f, th);
        d.r_kf0 = kf0_radius(f, th);
        d.outer_slack = d.r_kf / (f0_root * d.r_kf0);  // sup f = f(0) for even f
        d.inner_slack = f0_root * d.r_kf0 / d.r_kf;
        rep.outer_ok = rep.outer_ok && d.outer_slack <= c_outer;
        rep.inner_ok = rep.inner_ok && d.inner_slack <= c_inner;
        rep.directions.push_back(d);
    }
    return rep;
}

struct MomentsRatioResult {
    double ratio = 0.0;
    double lower = 0.0;   // n^{(n+1)/n} / (e (n+1)); requires sup h <= e^n
    double upper = 0.0;   // n! / ((n-1)!)^{(n+1)/n}; unconditional
    double sup_h = 0.0;
    bool sup_condition_ok = false;
};

/// int h r^n / (int h r^{n-1})^{(n+1)/n} for a log-concave h with h(0) = 1,
/// with the two closed-form bounds it must sit between.
inline MomentsRatioResult moments_ratio(const std::function<double(double)>& h, int n,
                                        double support_hi = kInf) {
    if (n < 1) throw PreconditionError("moments_ratio: n must be positive");
    if (std::fabs(h(0.0) - 1.0) > 1e-12)
        throw PreconditionError("moments_ratio: profile must satisfy h(0) = 1");
    MomentsRatioResult out;
    auto log_h = [&](double r) {
        const double v = h(r);
        return v > 0.0 ? std::log(v) : -kInf;
    };
    double hi = 1.0;
    while (log_h(2.0 * hi) > log_h(hi) && hi < 1e12) hi *= 2.0;
    const double r_sup = maximize_unimodal(log_h, 0.0, 2.0 * hi);
    out.sup_h = h(r_sup);
    out.sup_condition_ok = out.sup_h <= std::exp(static_cast<double>(n)) * (1.0 + 1e-12);
    EvenLogConcaveDensity wrap{
        1, [&](std::span<const double> x) { return log_h(std::fabs(x[0])); }};
    const Vec e1{1.0};
    const double l_hi = detail::log_radial_integral(wrap, e1, n, support_hi);
    const double l_lo = detail::log_radial_integral(wrap, e1, n - 1, support_hi);
    out.ratio = std::exp(l_hi - (n + 1.0) / n * l_lo);
    out.lower = std::pow(n, (n + 1.0) / n) / (kE * (n + 1.0));
    out.upper = std::exp(std::lgamma(n + 1.0) - (n + 1.0) / n * std::lgamma(static_cast<double>(n)));
    return out;
}

struct CenteredRatioReport {
    Vec barycenter;
    double f_center = 0.0;
    double f_sup = 0.0;
    double ratio = 0.0;      // f(0) / sup f
    double threshold = 0.0;  // e^-n
    bool ok = false;
};

/// Check f(0) >= e^-n sup f for a log-concave density with barycenter at the
/// origin (verified by tensor quadrature over the given box; n <= 3).
inline CenteredRatioReport fradelizi_check(int n,
                                           const std::function<double(std::span<const double>)>& log_f,
                                           const Vec& box_lo, const Vec& box_hi,
                                           double barycenter_tol = 1e-6) {
    if (n < 1 || n > 3) throw PreconditionError("fradelizi_check: tensor quadrature needs n <= 3");
    CenteredRatioReport rep;
    quad::Options opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = (n == 1) ? 1e-10 : 1e-7;  // nested adaptive cost grows fast with n
    opt.max_panels = 600;
    // tensor integration of w(x) f(x)
    std::function<double(const std::function<double(std::span<const double>)>&)> integrate_nd =
        [&](const std::function<double(std::span<const double>)>& fn) {
            Vec pt(static_cast<std::size_t>(n));
            std::function<double(int)> rec = [&](int dim) -> double {
                return quad::integrate(
                    [&](double x) {
                        pt[static_cast<std::size_t>(dim)] = x;
                        return (dim + 1 == n) ? fn(pt) : rec(dim + 1);
                    },
                    box_lo[static_cast<std::size_t>(dim)], box_hi[static_cast<std::size_t>(dim)],
                    opt);
            };
            return rec(0);
        };
    auto density = [&](std::span<const double> x) {
        const double l = log_f(x);
        return std::isinf(l) ? 0.0 : std::exp(l);
    };
    const double mass = integrate_nd(density);
    rep.barycenter.resize(static_cast<std::size_t>(n));
    double bary_norm = 0.0;
    for (int i = 0; i < n; ++i) {
        const double m1 = integrate_nd([&](std::span<const double> x) {
            return x[static_cast<std::size_t>(i)] * density(x);
        });
        rep.barycenter[static_cast<std::size_t>(i)] = m1 / mass;
        bary_norm = std::max(bary_norm, std::fabs(m1 / mass));
    }
    const double scale = norm2(box_hi) + norm2(box_lo);
    if (bary_norm > barycenter_tol * (1.0 + scale))
        throw PreconditionError("fradelizi_check: barycenter is not at the origin");
    const Vec origin(static_cast<std::size_t>(n), 0.0);
    rep.f_center = density(origin);
    // log-concave, so any local maximum is global; multi-start simplex on -log f
    double best = -kInf;
    RngStream rng(0x66726164, 0);
    for (int start = 0; start < 8; ++start) {
        Vec x0(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            x0[static_cast<std::size_t>(i)] = rng.uniform(box_lo[static_cast<std::size_t>(i)],
                                                          box_hi[static_cast<std::size_t>(i)]);
        auto res = nelder_mead([&](const Vec& x) { return -log_f(x); }, x0, 0.3, 400);
        best = std::max(best, -res.value);
    }
    rep.f_sup = std::exp(best);
    rep.ratio = rep.f_center / rep.f_sup;
    rep.threshold = std::exp(-static_cast<double>(n));
    rep.ok = rep.ratio >= rep.threshold * (1.0 - 1e-9);
    return rep;
}

struct LipschitzStats {
    double u_quotient = 0.0;
    double t_quotient = 0.0;
    double u_quotient_normalized = 0.0;  // divided by f(0)^{1/n}
    double t_quotient_normalized = 0.0;
    double f0_root = 0.0;
    int pairs = 0;
    bool factor3_ok = false;  // sup T-quotient <= 3 sup u-quotient (with slack)
};

/// Empirical Lipschitz study of the radial factor u and the map T over
/// sampled pairs: independent draws plus jitter and ray-collinear pairs that
/// probe the local gradient.  Both quotients use the transport-body gauge.
inline LipschitzStats empirical_lipschitz(const RadialDensity& f, int pair_count,
                                          std::uint64_t seed) {
    LipschitzStats st;
    st.f0_root = f.f0_root();
    RngStream rng(seed, 0);
    const int n = f.dim();
    for (int k = 0; k < pair_count; ++k) {
        Vec x = f.sample(rng);
        Vec y;
        switch (k % 3) {
            case 0:
                y = f.sample(rng);
                break;
            case 1: {  // small jitter
                y = x;
                const std::size_t i = rng.bits() % static_cast<std::size_t>(n);
                y[i] += rng.uniform(-0.05, 0.05) * (1.0 + std::fabs(y[i]));
                break;
            }
            default:  // along the ray
                y = scaled_vec(x, 1.0 + rng.uniform(-0.03, 0.03));
        }
        const double dist = f.gauge(sub_vec(x, y));
        if (dist < 1e-12) continue;
        const double du = std::fabs(f.u_factor(x) - f.u_factor(y));
        const double dt = f.gauge(sub_vec(f.transport(x), f.transport(y)));
        st.u_quotient = std::max(st.u_quotient, du / dist);
        st.t_quotient = std::max(st.t_quotient, dt / dist);
        ++st.pairs;
    }
    st.u_quotient_normalized = st.u_quotient / st.f0_root;
    st.t_quotient_normalized = st.t_quotient / st.f0_root;
    st.factor3_ok = st.t_quotient <= 3.0 * st.u_quotient * (1.0 + 0.05) + 1e-12;
    return st;
}

}  // namespace isop
