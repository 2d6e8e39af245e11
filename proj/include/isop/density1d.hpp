#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "isop/cdfcache.hpp"
#include "isop/common.hpp"
#include "isop/special.hpp"

namespace isop {

/// Convex potential g of a 1D log-concave density exp(-g)/Z.  The minimum is
/// moved to x = 0 at construction (horizontal shift only).
struct PotentialSpec {
    enum class Kind { quadratic, power, truncated_quadratic, piecewise_linear };

    static PotentialSpec quadratic(double kappa) {
        if (!(kappa > 0.0)) throw PreconditionError("PotentialSpec::quadratic: kappa must be > 0");
        PotentialSpec s;
        s.kind = Kind::quadratic;
        s.kappa = kappa;
        return s;
    }

    static PotentialSpec power(double alpha, double p) {
        if (!(alpha > 0.0) || !(p >= 1.0))
            throw PreconditionError("PotentialSpec::power: need alpha > 0 and p >= 1");
        PotentialSpec s;
        s.kind = Kind::power;
        s.alpha = alpha;
        s.p = p;
        return s;
    }

    /// kappa x^2 on [-R, R], +inf outside; kappa = 0 gives the uniform box.
    static PotentialSpec truncated_quadratic(double kappa, double R) {
        if (!(kappa >= 0.0) || !(R > 0.0))
            throw PreconditionError("PotentialSpec::truncated_quadratic: need kappa >= 0, R > 0");
        PotentialSpec s;
        s.kind = Kind::truncated_quadratic;
        s.kappa = kappa;
        s.R = R;
        return s;
    }

    /// Piecewise-linear convex potential through the given (x, g) knots,
    /// extended by the end slopes; slopes must be non-decreasing.
    static PotentialSpec piecewise_linear(std::vector<std::pair<double, double>> knots) {
        if (knots.size() < 2)
            throw PreconditionError("PotentialSpec::piecewise_linear: need at least two knots");
        std::sort(knots.begin(), knots.end());
        double prev_slope = -kInf;
        for (std::size_t i = 1; i < knots.size(); ++i) {
            const double dx = knots[i].first - knots[i - 1].first;
            if (!(dx > 0.0))
                throw PreconditionError("PotentialSpec::piecewise_linear: duplicate knot x");
            const double slope = (knots[i].second - knots[i - 1].second) / dx;
            if (slope < prev_slope - 1e-12)
                throw PreconditionError("PotentialSpec::piecewise_linear: not convex");
            prev_slope = slope;
        }
        PotentialSpec s;
        s.kind = Kind::piecewise_linear;
        s.knots = std::move(knots);
        return s;
    }

    Kind kind = Kind::quadratic;
    double kappa = 0.0, alpha = 0.0, p = 0.0, R = 0.0;
    std::vector<std::pair<double, double>> knots;
};

struct ProfilePoint {
    double a = 0.0;        // set mass
    double a_tilde = 0.0;  // min(a, 1 - a)
    double value = 0.0;    // boundary measure (lower bound or exact)
};

/// One-dimensional log-concave probability density f = exp(-g)/Z with a
/// cached monotone CDF; quantiles are accurate to ~1e-14 in mass.
class Density1D {
public:
    static Density1D normalize(PotentialSpec spec) {
        Density1D d;
        d.spec_ = std::move(spec);
        d.shift_ = argmin_of(d.spec_);
        d.setup_support();
        d.g0_ = d.g(0.0);
        // weight of the reduced potential g - g(0); owns copies of its inputs
        const PotentialSpec spec_copy = d.spec_;
        const double shift = d.shift_, g0 = d.g0_;
        auto weight = [spec_copy, shift, g0](double x) {
            const double gr = raw_potential(spec_copy, x + shift) - g0;
            return std::isinf(gr) ? 0.0 : std::exp(-gr);
        };
        d.cdf_ = std::make_shared<PanelCdf>(
            PanelCdf::build(weight, d.support_lo_, d.support_hi_, 128));
        d.total_ = d.cdf_->total();
        return d;
    }

    /// Shifted potential (minimum at x = 0); +inf outside the support.
    double g(double x) const { return raw_potential(spec_, x + shift_); }

    /// Normalization constant int exp(-g); prefer log_Z for extreme offsets.
    double Z() const { return total_ * std::exp(-g0_); }
    double log_Z() const { return std::log(total_) - g0_; }

    double support_lo() const { return hard_lo_ ? support_lo_ : -kInf; }
    double support_hi() const { return hard_hi_ ? support_hi_ : kInf; }

    double log_pdf(double x) const { return -(g(x) - g0_) - std::log(total_); }
    double pdf(double x) const {
        const double gr = g(x) - g0_;
        return std::isinf(gr) ? 0.0 : std::exp(-gr) / total_;
    }

    double cdf(double x) const { return cdf_->cdf_raw(x) / total_; }

    double quantile(double a) const {
        if (!(a > 0.0 && a < 1.0))
            throw PreconditionError("Density1D::quantile: mass must be in (0,1)");
        return cdf_->quantile_raw(a * total_);
    }

    /// Exact isoperimetric profile at mass a: half-lines are extremal for
    /// log-concave densities, so this is min over the two half-lines of the
    /// density at the cut point.
    ProfilePoint exact_profile(double a) const {
        const double lo = pdf(quantile(a));
        const double hi = pdf(quantile(1.0 - a));
        return {a, std::min(a, 1.0 - a), std::min(lo, hi)};
    }

    bool even() const { return even_; }
    const PotentialSpec& spec() const { return spec_; }

private:
    static double argmin_of(const PotentialSpec& s) {
        switch (s.kind) {
            case PotentialSpec::Kind::quadratic:
            case PotentialSpec::Kind::power:
            case PotentialSpec::Kind::truncated_quadratic:
                return 0.0;
            case PotentialSpec::Kind::piecewise_linear: {
                // minimizing knot; midpoint when a flat segment attains the min
                std::size_t best = 0;
                for (std::size_t i = 1; i < s.knots.size(); ++i)
                    if (s.knots[i].second < s.knots[best].second) best = i;
                double lo = s.knots[best].first, hi = s.knots[best].first;
                for (std::size_t i = best + 1;
                     i < s.knots.size() && s.knots[i].second == s.knots[best].second; ++i)
                    hi = s.knots[i].first;
                return 0.5 * (lo + hi);
            }
        }
        return 0.0;
    }

    static double raw_potential(const PotentialSpec& s, double x) {
        switch (s.kind) {
            case PotentialSpec::Kind::quadratic:
                return s.kappa * x * x;
            case PotentialSpec::Kind::power:
                return s.alpha * std::pow(std::fabs(x), s.p);
            case PotentialSpec::Kind::truncated_quadratic:
                return (std::fabs(x) <= s.R) ? s.kappa * x * x : kInf;
            case PotentialSpec::Kind::piecewise_linear: {
                const auto& k = s.knots;
                if (x <= k.front().first) {
                    const double slope =
                        (k[1].second - k[0].second) / (k[1].first - k[0].first);
                    return k.front().second + slope * (x - k.front().first);
                }
                if (x >= k.back().first) {
                    const auto& a = k[k.size() - 2];
                    const auto& b = k.back();
                    const double slope = (b.second - a.second) / (b.first - a.first);
                    return b.second + slope * (x - b.first);
                }
                auto it = std::lower_bound(k.begin(), k.end(), x,
                                           [](const auto& kn, double v) { return kn.first < v; });
                const auto& [x2, g2] = *it;
                const auto& [x1, g1] = *(it - 1);
                return g1 + (g2 - g1) * (x - x1) / (x2 - x1);
            }
        }
        return kInf;
    }

    // Find cutoffs where the potential rise reaches kTailRise; the convexity
    // tail envelope makes the truncated mass < 1e-25 of the total.
    static constexpr double kTailRise = 64.0;

    void setup_support() {
        const double g0 = g(0.0);
        even_ = true;
        switch (spec_.kind) {
            case PotentialSpec::Kind::quadratic:
                support_hi_ = std::sqrt(kTailRise / spec_.kappa);
                support_lo_ = -support_hi_;
                break;
            case PotentialSpec::Kind::power:
                support_hi_ = std::pow(kTailRise / spec_.alpha, 1.0 / spec_.p);
                support_lo_ = -support_hi_;
                break;
            case PotentialSpec::Kind::truncated_quadratic:
                support_hi_ = spec_.R;
                support_lo_ = -spec_.R;
                hard_lo_ = hard_hi_ = true;
                break;
            case PotentialSpec::Kind::piecewise_linear: {
                const auto& k = spec_.knots;
                const double right_slope =
                    (k.back().second - k[k.size() - 2].second) /
                    (k.back().first - k[k.size() - 2].first);
                const double left_slope =
                    (k[1].second - k[0].second) / (k[1].first - k[0].first);
                if (!(right_slope > 0.0) || !(left_slope < 0.0))
                    throw NonIntegrableError(
                        "Density1D: piecewise-linear potential has a non-increasing tail");
                const double xr = k.back().first - shift_;
                const double xl = k.front().first - shift_;
                support_hi_ = xr + (g0 + kTailRise - g(xr)) / right_slope;
                support_lo_ = xl + (g0 + kTailRise - g(xl)) / left_slope;
                even_ = is_even_knots();
                break;
            }
        }
    }

    bool is_even_knots() const {
        const auto& k = spec_.knots;
        for (std::size_t i = 0; i < k.size(); ++i) {
            const auto& a = k[i];
            const auto& b = k[k.size() - 1 - i];
            if (std::fabs((a.first - shift_) + (b.first - shift_)) > 1e-12 ||
                std::fabs(a.second - b.second) > 1e-12)
                return false;
        }
        return true;
    }

    PotentialSpec spec_;
    double shift_ = 0.0;
    double g0_ = 0.0;
    double support_lo_ = 0.0, support_hi_ = 0.0;
    bool hard_lo_ = false, hard_hi_ = false;
    bool even_ = true;
    double total_ = 0.0;  // int exp(-(g - g(0)))
    std::shared_ptr<const PanelCdf> cdf_;
};

}  // namespace isop
