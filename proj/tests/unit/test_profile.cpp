#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "isop/bounds1d.hpp"
#include "isop/profile.hpp"
#include "isop/special.hpp"

using namespace isop;

namespace {
const double kC0 = (kE - 1.0) / (2.0 * kE);
}

TEST_CASE("ulc profile curve: delegation identity and closed form") {
    for (double alpha : {0.125, 0.5, 2.0}) {
        for (double p : {2.0, 3.0, 4.0}) {
            const auto delta = ModulusSpec::power(alpha, p);
            const auto curve = bound_ulc_profile(delta);
            const auto doubled = scaled(delta, 2.0);
            for (double at : {1e-10, 1e-4, 0.05, 0.3, 0.5}) {
                const double via_1d = bound_prop1d(doubled, at).value;
                CHECK(curve.eval(at) == Catch::Approx(via_1d).epsilon(1e-12));
                const double closed = kC0 * std::pow(2.0 * alpha, 1.0 / p) * at *
                                      std::pow(std::log(1.0 / at), 1.0 - 1.0 / p);
                CHECK(curve.eval(at) == Catch::Approx(closed).epsilon(1e-10));
            }
        }
    }
    const auto zero_curve = bound_ulc_profile(ModulusSpec::zero());
    CHECK(zero_curve.eval(0.17) == 0.0);
    // the Gaussian-class modulus t^2/8
    const auto g = bound_ulc_profile(ModulusSpec::power(0.125, 2.0));
    for (double at : {0.01, 0.25, 0.5}) {
        CHECK(g.eval(at) ==
              Catch::Approx(kC0 * 0.5 * at * std::sqrt(std::log(1.0 / at))).epsilon(1e-11));
    }
}

TEST_CASE("power profile curve and its universal constant") {
    const auto c1 = bound_power_profile(0.125, 2.0);
    const auto t1 = bound_ulc_profile(ModulusSpec::power(0.125, 2.0));
    for (double at : {1e-6, 0.1, 0.5}) CHECK(c1.eval(at) == Catch::Approx(t1.eval(at)));
    for (double p : {2.0, 3.0, 8.0, 32.0}) {
        const double c = kC0 * std::pow(2.0, 1.0 / p);
        CHECK(c >= kC0);
        CHECK(c1.params["c"].get<double>() >= kC0);
        const auto curve = bound_power_profile(0.7, p);
        const double expect = c * std::pow(0.7, 1.0 / p) * 0.5 * std::pow(std::log(2.0), 1.0 - 1.0 / p);
        CHECK(curve.eval(0.5) == Catch::Approx(expect).epsilon(1e-11));
    }
    CHECK_THROWS_AS(bound_power_profile(1.0, 1.5), PreconditionError);
}

TEST_CASE("gaussian comparison profile") {
    const auto bl = bound_bakry_ledoux();
    CHECK(bl.eval(0.5) == Catch::Approx(1.0 / kSqrt2Pi).epsilon(1e-13));
    CHECK(bl.eval(1e-9) < 1e-7);
    // ratio to a~ sqrt(log 1/a~) stays within a constant band
    double lo = kInf, hi = 0.0;
    for (double at : logspace(1e-12, 0.4, 300)) {
        const double ratio = bl.eval(at) / (at * std::sqrt(std::log(1.0 / at)));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    INFO("empirical band [" << lo << ", " << hi << "]");
    CHECK(lo > 0.9);
    CHECK(hi < 1.6);
}

TEST_CASE("gaussian profile dominates the t^2/8 power bound") {
    const auto bl = bound_bakry_ledoux();
    const auto curve = bound_ulc_profile(ModulusSpec::power(0.125, 2.0));
    for (double at : logspace(1e-10, 0.5, 200)) CHECK(curve.eval(at) <= bl.eval(at));
}

TEST_CASE("entropy (log-concave ball) bound") {
    const auto b = bound_bobkov(1.0, 1.0);
    CHECK(b.eval(0.5) == Catch::Approx(0.5 * std::log(2.0)).epsilon(1e-13));
    // small-mass asymptotics ~ (1/2r) a log 1/a; the second entropy term is
    // a (1 + o(1)), a relative 1/log(1/a) correction
    for (double at : {1e-8, 1e-10}) {
        const double L = std::log(1.0 / at);
        CHECK(b.eval(at) == Catch::Approx(0.5 * at * L).epsilon(1.1 / L));
        CHECK(b.eval(at) >= 0.5 * at * L);
    }
    const auto clamped = bound_bobkov(1.0, 1e-9);
    CHECK(clamped.eval(0.5) == 0.0);
    CHECK(bound_bobkov(2.0, 1.0).eval(0.3) == Catch::Approx(b.eval(0.3) / 2.0));
}

TEST_CASE("p-uniformly convex ball curve: composition and dimension scaling") {
    // Gamma(1+n/p)^{1/n} / n^{1/p} -> (e p)^{-1/p}, at the Stirling rate
    // exp(log(2 pi n / p) / (2n)) - 1
    for (double p : {2.0, 4.0}) {
        const double limit = std::pow(kE * p, -1.0 / p);
        for (int n : {100, 1000, 10000}) {
            const double val = std::exp(std::lgamma(1.0 + n / p) / n) / std::pow(n, 1.0 / p);
            const double rate = std::log(2.0 * kPi * n / p) / (2.0 * n);
            CHECK(val == Catch::Approx(limit).epsilon(1.5 * rate + 1e-4));
        }
    }
    const auto base = bound_power_profile(0.25, 2.0);
    const auto ball = bound_puc_ball(0.25, 2.0, 1, 1.0);
    const double gamma_scale = std::exp(std::lgamma(1.5));
    CHECK(ball.eval(0.5) == Catch::Approx(base.eval(0.5) * gamma_scale).epsilon(1e-12));
    CHECK(ball.eval(0.5) ==
          Catch::Approx(kC0 * (1.0 / std::sqrt(2.0)) * 0.5 * std::sqrt(std::log(2.0)) * gamma_scale)
              .epsilon(1e-11));
    // alpha -> 0 kills the curve
    CHECK(bound_puc_ball(1e-30, 2.0, 4, 1.0).eval(0.3) < 1e-12);
}

TEST_CASE("uniformly convex body curve") {
    // alpha and n chosen so both regimes are visible on (0, 1/2]: the
    // truncation takes over below a~* = exp(-2 delta(1/4) n) = e^-16
    const int n = 64;
    const double alpha = 2.0;
    const auto delta = ModulusSpec::power(alpha, 2.0);
    const auto curve = bound_ucb_profile(delta, n);

    SECTION("proportional to the power-ball shape away from the truncation") {
        // in the non-truncated regime the ratio to a~ log^{1-1/p} is constant
        const double c_n_delta = curve.params["C_n_delta"].get<double>();
        double first_ratio = 0.0;
        for (double at : {0.4, 0.2, 0.1, 1e-3, 1e-6}) {
            const double L = std::log(1.0 / at);
            REQUIRE(delta.inverse(L / (2.0 * n)) < 0.25);  // not clipped
            const double shape = at * std::sqrt(L);
            const double ratio = curve.eval(at) / shape;
            if (first_ratio == 0.0)
                first_ratio = ratio;
            else
                CHECK(ratio == Catch::Approx(first_ratio).epsilon(1e-9));
        }
        CHECK(first_ratio ==
              Catch::Approx(kUcbSmallSetConstant * c_n_delta * std::sqrt(2.0 * n * alpha))
                  .epsilon(1e-9));
    }

    SECTION("continuity across the truncation point") {
        const double at_star = std::exp(-2.0 * delta.eval(0.25) * n);
        const double below = curve.eval(at_star * (1.0 - 1e-9));
        const double above = curve.eval(at_star * (1.0 + 1e-9));
        CHECK(below == Catch::Approx(above).epsilon(1e-6));
        // explicit two-branch evaluation agrees at the branch point
        const double L = std::log(1.0 / at_star);
        const double direct = kUcbSmallSetConstant * curve.params["C_n_delta"].get<double>() *
                              at_star * L / delta.inverse(L / (2.0 * n));
        const double clipped = kUcbSmallSetConstant * curve.params["C_n_delta"].get<double>() *
                               at_star * L / 0.25;
        CHECK(curve.eval(at_star) == Catch::Approx(direct).epsilon(1e-9));
        CHECK(direct == Catch::Approx(clipped).epsilon(1e-9));
    }

    SECTION("small sets stay below the r = 1 entropy bound") {
        const auto bob = bound_bobkov(1.0, 1.0);
        for (double at : logspace(1e-12, std::exp(-2.0 * delta.eval(0.25) * n), 40))
            CHECK(curve.eval(at) <= bob.eval(at) * (1.0 + 1e-12));
    }

    SECTION("constant stabilizes as n grows") {
        double prev = 0.0;
        for (int m : {2, 4, 8, 16, 32, 64, 128, 256}) {
            const double c = ucb_constant(delta, m);
            CHECK(c <= kC0 + 1e-12);
            if (m >= 64) CHECK(c == Catch::Approx(prev).epsilon(0.2));
            prev = c;
        }
    }

    SECTION("rejects moduli unbounded on [0, 1/4]") {
        CHECK_THROWS_AS(
            bound_ucb_profile(ModulusSpec::truncated(ModulusSpec::power(1.0, 2.0), 0.1), 4),
            PreconditionError);
    }
}

TEST_CASE("monotone dependence on alpha") {
    for (double p : {2.0, 3.0}) {
        const auto lo = bound_ulc_profile(ModulusSpec::power(0.2, p));
        const auto hi = bound_ulc_profile(ModulusSpec::power(0.8, p));
        for (double at : {1e-5, 0.05, 0.5}) CHECK(hi.eval(at) >= lo.eval(at));
    }
}

TEST_CASE("sweep tables") {
    const auto zero_sweep = sweep({bound_ulc_profile(ModulusSpec::zero())}, linspace(0.05, 0.5, 7));
    for (double v : zero_sweep.columns[0]) CHECK(v == 0.0);

    const auto t = sweep({bound_ulc_profile(ModulusSpec::power(0.125, 2.0)), bound_bakry_ledoux()},
                         logspace(1e-6, 0.5, 6));
    REQUIRE(t.columns.size() == 2);
    REQUIRE(t.columns[0].size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(t.columns[0][i] <= t.columns[1][i]);

    const auto single = sweep({bound_bakry_ledoux()}, {0.5});
    CHECK(single.columns[0][0] == Catch::Approx(1.0 / kSqrt2Pi));

    CHECK_THROWS_AS(sweep({bound_bakry_ledoux()}, {}), PreconditionError);
    CHECK_THROWS_AS(sweep({bound_bakry_ledoux()}, {0.7}), PreconditionError);
}

TEST_CASE("curves are continuous on a fine grid") {
    const auto curves = {bound_ulc_profile(ModulusSpec::power(0.5, 3.0)), bound_bakry_ledoux(),
                         bound_bobkov(1.0, 0.8), bound_ucb_profile(ModulusSpec::power(0.125, 2.0), 6)};
    for (const auto& c : curves) {
        double prev = kNaN;
        for (double at : logspace(1e-8, 0.5, 400)) {
            const double v = c.eval(at);
            CHECK(v >= 0.0);
            if (!std::isnan(prev)) CHECK(std::fabs(v - prev) < 0.2 * (1.0 + std::fabs(prev)));
            prev = v;
        }
    }
}
