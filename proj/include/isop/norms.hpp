#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "isop/common.hpp"
#include "isop/rng.hpp"
#include "isop/special.hpp"

namespace isop {

/// A symmetric norm on R^n: the l_q family, the Euclidean shortcut, or a
/// user-supplied homogeneous convex functional with its dual.
class NormSpec {
public:
    enum class Kind { euclidean, lq, custom };
    using Eval = std::function<double(std::span<const double>)>;

    static NormSpec euclidean(int n) {
        NormSpec s(Kind::euclidean, n);
        return s;
    }

    static NormSpec lq(int n, double q) {
        if (!(q > 1.0) || !std::isfinite(q))
            throw PreconditionError("NormSpec::lq: q must be in (1, inf)");
        NormSpec s(Kind::lq, n);
        s.q_ = q;
        return s;
    }

    /// Custom norm; the evaluator pair is spot-checked for homogeneity,
    /// triangle inequality and definiteness on seeded random samples.
    /// cone_q, when given, declares that the unit sphere carries the cone
    /// measure of l_{cone_q} (true for any rescaled l_q norm), enabling the
    /// coordinate sampler.
    static NormSpec custom(int n, Eval eval, Eval dual,
                           std::optional<double> unit_ball_volume = std::nullopt,
                           std::optional<double> cone_q = std::nullopt) {
        NormSpec s(Kind::custom, n);
        s.eval_ = std::move(eval);
        s.dual_ = std::move(dual);
        s.volume_ = unit_ball_volume;
        s.cone_q_ = cone_q;
        s.validate_custom();
        return s;
    }

    int dim() const { return n_; }
    Kind kind() const { return kind_; }
    double q() const { return q_; }

    double operator()(std::span<const double> x) const {
        switch (kind_) {
            case Kind::euclidean:
                return norm2(x);
            case Kind::lq:
                return lq_norm(x, q_);
            case Kind::custom:
                return eval_(x);
        }
        return 0.0;
    }

    /// Dual norm (for l_q that is l_{q'}, 1/q + 1/q' = 1).
    double dual(std::span<const double> x) const {
        switch (kind_) {
            case Kind::euclidean:
                return norm2(x);
            case Kind::lq:
                return lq_norm(x, q_ / (q_ - 1.0));
            case Kind::custom:
                return dual_(x);
        }
        return 0.0;
    }

    double unit_ball_volume() const {
        switch (kind_) {
            case Kind::euclidean:
                return lq_ball_volume(n_, 2.0);
            case Kind::lq:
                return lq_ball_volume(n_, q_);
            case Kind::custom:
                if (volume_) return *volume_;
                throw PreconditionError("NormSpec: unit ball volume not supplied for custom norm");
        }
        return 0.0;
    }

    /// Exponent of the coordinate sampler whose normalized draws give the
    /// cone measure on this norm's sphere (l_q family only).
    double cone_exponent() const {
        if (kind_ == Kind::euclidean) return 2.0;
        if (kind_ == Kind::lq) return q_;
        if (cone_q_) return *cone_q_;
        throw PreconditionError("NormSpec: no cone-measure sampler for this custom norm");
    }

    static double lq_norm(std::span<const double> x, double q) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::fabs(v));
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (double v : x) s += std::pow(std::fabs(v) / m, q);
        return m * std::pow(s, 1.0 / q);
    }

private:
    NormSpec(Kind k, int n) : kind_(k), n_(n) {
        if (n < 1) throw PreconditionError("NormSpec: dimension must be positive");
    }

    void validate_custom() const {
        RngStream rng(0x6e6f726d, 0);
        Vec x(static_cast<std::size_t>(n_)), y(static_cast<std::size_t>(n_));
        for (int trial = 0; trial < 64; ++trial) {
            for (auto& v : x) v = rng.uniform(-1.0, 1.0);
            for (auto& v : y) v = rng.uniform(-1.0, 1.0);
            const double nx = eval_(x), ny = eval_(y);
            if (!(nx >= 0.0) || !(ny >= 0.0))
                throw PreconditionError("NormSpec::custom: negative value");
            const double lam = rng.uniform(-3.0, 3.0);
            if (std::fabs(eval_(scaled_vec(x, lam)) - std::fabs(lam) * nx) >
                1e-9 * (1.0 + nx) * (1.0 + std::fabs(lam)))
                throw PreconditionError("NormSpec::custom: not absolutely homogeneous");
            if (eval_(add_vec(x, y)) > nx + ny + 1e-9 * (1.0 + nx + ny))
                throw PreconditionError("NormSpec::custom: triangle inequality fails");
            if (norm2(x) > 1e-6 && nx == 0.0)
                throw PreconditionError("NormSpec::custom: vanishes on a nonzero vector");
        }
    }

    Kind kind_;
    int n_;
    double q_ = 2.0;
    Eval eval_, dual_;
    std::optional<double> volume_;
    std::optional<double> cone_q_;
};

/// Midpoint gap (|x|^2 + |y|^2)/2 - |(x+y)/2|^2 in the given norm; for the
/// Euclidean norm this equals |x-y|^2/4 exactly.
inline double uniform_convexity_gap(const NormSpec& norm, std::span<const double> x,
                                    std::span<const double> y) {
    const Vec mid = scaled_vec(add_vec(x, y), 0.5);
    return 0.5 * (sqr(norm(x)) + sqr(norm(y))) - sqr(norm(mid));
}

}  // namespace isop
