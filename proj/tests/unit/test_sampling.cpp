#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "isop/sampling.hpp"

using namespace isop;

TEST_CASE("coordinate sampler moments") {
    SECTION("p = 2 has coordinate variance 1/2") {
        const int count = 40000;
        const auto b = sample_mu_lp(1, 2.0, count, 101);
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < count; ++i) {
            s1 += b.at(i, 0);
            s2 += sqr(b.at(i, 0));
        }
        const double mean = s1 / count, var = s2 / count - sqr(mean);
        CHECK(mean == Catch::Approx(0.0).margin(3.0 / std::sqrt(2.0 * count)));
        CHECK(var == Catch::Approx(0.5).margin(0.01));
    }
    SECTION("E |x|_p^p = n/p within 3 sigma") {
        for (double p : {2.0, 3.0}) {
            const int n = 6, count = 20000;
            const auto b = sample_mu_lp(n, p, count, 7);
            double sum = 0.0, sumsq = 0.0;
            for (int i = 0; i < count; ++i) {
                double v = 0.0;
                for (int j = 0; j < n; ++j) v += std::pow(std::fabs(b.at(i, j)), p);
                sum += v;
                sumsq += v * v;
            }
            const double mean = sum / count;
            const double sd = std::sqrt((sumsq / count - mean * mean) / count);
            CHECK(mean == Catch::Approx(n / p).margin(3.0 * sd));
        }
    }
    SECTION("sign symmetry") {
        const int count = 50000;
        const auto b = sample_mu_lp(1, 4.0, count, 11);
        double signs = 0.0;
        for (int i = 0; i < count; ++i) signs += (b.at(i, 0) > 0.0) ? 1.0 : -1.0;
        CHECK(signs / count == Catch::Approx(0.0).margin(3.0 / std::sqrt(count)));
    }
}

TEST_CASE("batches are bit-identical for a fixed (seed, streams) pair") {
    const auto a = sample_mu_lp(3, 2.0, 999, 42, 8, 1);
    const auto b = sample_mu_lp(3, 2.0, 999, 42, 8, 4);  // more threads
    CHECK(a.data == b.data);
    const auto c = sample_mu_lp(3, 2.0, 999, 43, 8, 1);
    CHECK(a.data != c.data);
    const auto d = sample_mu_lp(3, 2.0, 999, 42, 4, 1);  // different stream split
    CHECK(a.data != d.data);
}

TEST_CASE("ks statistic behaves") {
    std::vector<double> perfect;
    const int n = 2000;
    for (int i = 0; i < n; ++i) perfect.push_back((i + 0.5) / n);
    CHECK(ks_statistic_uniform(perfect) < 1.0 / n);
    std::vector<double> shifted;
    for (int i = 0; i < n; ++i) shifted.push_back(std::pow((i + 0.5) / n, 2.0));
    CHECK(ks_statistic_uniform(shifted) > 0.2);
}

TEST_CASE("pushforward uniformity at unit-test scale") {
    const auto ball = RadialDensity::make(3, NormSpec::euclidean(3), RadialProfile::indicator());
    const auto st_ball = pushforward_uniformity(ball, 20000, 5);
    CHECK(st_ball.ks_ok);

    const auto f = RadialDensity::make(4, NormSpec::lq(4, 2.0), RadialProfile::exp_power(2.0));
    const auto st = pushforward_uniformity(f, 20000, 6);
    CHECK(st.ks_ok);
    CHECK(st.direction_balance < 0.03);

    const auto f4 = RadialDensity::make(4, NormSpec::lq(4, 4.0), RadialProfile::exp_power(4.0));
    CHECK(pushforward_uniformity(f4, 20000, 8).ks_ok);
}

TEST_CASE("uniform ball sampler stays in the ball and fills it") {
    const auto norm = NormSpec::lq(3, 3.0);
    const auto b = sample_uniform_ball(norm, 5000, 12);
    int outer = 0;
    for (int i = 0; i < b.count; ++i) {
        const double r = norm(b.row(i));
        CHECK(r <= 1.0 + 1e-12);
        if (r > 0.9) ++outer;
    }
    // mass of the shell r > 0.9 is 1 - 0.9^3 = 0.271
    CHECK(outer > 5000 * 0.2);
    CHECK(outer < 5000 * 0.35);
}

TEST_CASE("trunc-gauss radial profile integrates and samples") {
    const auto f = RadialDensity::make(2, NormSpec::euclidean(2), RadialProfile::trunc_gauss(3.0, 0.8));
    RngStream rng(3, 0);
    for (int i = 0; i < 200; ++i) {
        const Vec x = f.sample(rng);
        CHECK(norm2(x) <= 0.8 + 1e-12);
    }
    CHECK(pushforward_uniformity(f, 20000, 9).ks_ok);
}
