#pragma once

#include <cmath>

#include "isop/common.hpp"

namespace isop {

inline double norm_pdf(double x) { return std::exp(-0.5 * x * x) / kSqrt2Pi; }

/// Standard normal CDF, accurate in both tails via erfc.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

/// Standard normal quantile (Wichura's PPND16, ~1e-15 relative accuracy).
inline double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw PreconditionError("norm_quantile: p must be in (0,1)");
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) *
                        r +
                    4.5921953931549871457e+4) *
                       r +
                   1.3731693765509461125e+4) *
                      r +
                  1.9715909503065514427e+3) *
                     r +
                 1.3314166789178437745e+2) *
                    r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) *
                        r +
                    2.1213794301586595867e+4) *
                       r +
                   5.3941960214247511077e+3) *
                      r +
                  6.8718700749205790830e+2) *
                     r +
                 4.2313330701600911252e+1) *
                    r +
                1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e+0) *
                    r +
                3.64784832476320460504e+0) *
                   r +
               5.76949722146069140550e+0) *
                  r +
              4.63033784615654529590e+0) *
                 r +
             1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e+0) *
                  r +
              2.05319162663775882187e+0) *
                 r +
             1.0);
    } else {
        r -= 5.0;
        v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e+0) *
                  r +
              5.46378491116411436990e+0) *
                 r +
             6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) *
                     r +
                 7.86869131145613259100e-4) *
                    r +
                1.48753612908506148525e-2) *
                   r +
               1.36929880922735805310e-1) *
                  r +
              5.99832206555887937690e-1) *
                 r +
             1.0);
    }
    return (q < 0.0) ? -v : v;
}

namespace detail {

/// Lower regularized incomplete gamma by power series (x < a+1).
inline double gammap_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Upper regularized incomplete gamma by Lentz continued fraction (x >= a+1).
inline double gammaq_cf(double a, double x) {
    const double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-17) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// Regularized lower incomplete gamma P(a, x).
inline double gamma_p(double a, double x) {
    if (a <= 0.0) throw PreconditionError("gamma_p: a must be positive");
    if (x < 0.0) throw PreconditionError("gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gammap_series(a, x);
    return 1.0 - detail::gammaq_cf(a, x);
}

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
    if (a <= 0.0) throw PreconditionError("gamma_q: a must be positive");
    if (x < 0.0) throw PreconditionError("gamma_q: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gammap_series(a, x);
    return detail::gammaq_cf(a, x);
}

/// Inverse of P(a, .): the x with P(a, x) = u.  Halley iterations on a
/// Wilson-Hilferty (or small-a asymptotic) starting point.
inline double gamma_p_inverse(double a, double u) {
    if (!(u >= 0.0 && u < 1.0)) throw PreconditionError("gamma_p_inverse: u must be in [0,1)");
    if (u == 0.0) return 0.0;
    const double gln = std::lgamma(a);
    const double a1 = a - 1.0;
    const double lna1 = (a > 1.0) ? std::log(a1) : 0.0;
    const double afac = (a > 1.0) ? std::exp(a1 * (lna1 - 1.0) - gln) : 0.0;
    double x;
    if (a > 1.0) {
        const double pp = (u < 0.5) ? u : 1.0 - u;
        const double t = std::sqrt(-2.0 * std::log(pp));
        double z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
        if (u < 0.5) z = -z;
        x = std::max(1e-3, a * std::pow(1.0 - 1.0 / (9.0 * a) - z / (3.0 * std::sqrt(a)), 3));
    } else {
        const double t = 1.0 - a * (0.253 + a * 0.12);
        if (u < t)
            x = std::pow(u / t, 1.0 / a);
        else
            x = 1.0 - std::log(1.0 - (u - t) / (1.0 - t));
    }
    for (int j = 0; j < 24; ++j) {
        if (x <= 0.0) return 0.0;
        const double err = gamma_p(a, x) - u;
        double t;
        if (a > 1.0)
            t = afac * std::exp(-(x - a1) + a1 * (std::log(x) - lna1));
        else
            t = std::exp(-x + a1 * std::log(x) - gln);
        const double du = err / t;
        // Halley step
        double step = du / (1.0 - 0.5 * std::min(1.0, du * (a1 / x - 1.0)));
        x -= step;
        if (x <= 0.0) x = 0.5 * (x + step);
        if (std::fabs(step) < 1e-15 * x) break;
    }
    return x;
}

/// Unit ball volume of l_q on R^n; q = 2 gives the Euclidean value.
inline double lq_ball_volume(int n, double q) {
    if (n < 1) throw PreconditionError("lq_ball_volume: n must be positive");
    if (q <= 0.0) throw PreconditionError("lq_ball_volume: q must be positive");
    const double ln = n * (std::log(2.0) + std::lgamma(1.0 + 1.0 / q)) - std::lgamma(1.0 + n / q);
    return std::exp(ln);
}

}  // namespace isop
