#include <catch2/catch_amalgamated.hpp>

#include "isop/csv.hpp"
#include "isop/rng.hpp"
#include "isop/serialize.hpp"

using namespace isop;

TEST_CASE("modulus json contract") {
    // field names are part of the contract
    CHECK(to_json(ModulusSpec::zero()) == Json{{"kind", "zero"}});
    CHECK(to_json(ModulusSpec::power(0.125, 2.0)) ==
          Json{{"kind", "power"}, {"alpha", 0.125}, {"p", 2.0}});
    const auto trunc = ModulusSpec::truncated(ModulusSpec::power(1.0, 2.0), 0.25);
    const Json tj = to_json(trunc);
    CHECK(tj["kind"] == "truncated");
    CHECK(tj["cutoff"] == 0.25);
    CHECK(tj["base"]["kind"] == "power");
    const Json back = to_json(modulus_from_json(tj));
    CHECK(back == tj);
}

TEST_CASE("modulus json round trip property") {
    RngStream rng(5, 0);
    for (int rep = 0; rep < 60; ++rep) {
        ModulusSpec m = ModulusSpec::zero();
        switch (rng.bits() % 3) {
            case 0:
                m = ModulusSpec::power(rng.uniform(0.1, 3.0), rng.uniform(2.0, 6.0));
                break;
            case 1: {
                std::vector<std::pair<double, double>> knots;
                double t = 0.0, ratio = 0.1;
                for (int i = 0; i < 4; ++i) {
                    t += rng.uniform(0.2, 0.8);
                    ratio += rng.uniform(0.0, 0.5);
                    knots.emplace_back(t, ratio * t);
                }
                m = ModulusSpec::table(knots);
                break;
            }
            default:
                m = ModulusSpec::truncated(ModulusSpec::power(rng.uniform(0.5, 2.0), 2.0),
                                           rng.uniform(0.2, 1.0));
        }
        const auto m2 = modulus_from_json(to_json(m));
        for (double t : {0.1, 0.5, 1.3}) {
            const double a = m.eval(t), b = m2.eval(t);
            if (std::isinf(a))
                CHECK(std::isinf(b));
            else
                CHECK(a == b);
        }
    }
}

TEST_CASE("strict parsing rejects unknown keys and bad kinds") {
    CHECK_THROWS_AS(modulus_from_json(Json{{"kind", "power"}, {"alpha", 1.0}, {"p", 2.0},
                                           {"extra", 1}}),
                    PreconditionError);
    CHECK_THROWS_AS(modulus_from_json(Json{{"kind", "parabola"}}), PreconditionError);
    CHECK_THROWS_AS(norm_from_json(Json{{"kind", "lq"}, {"q", 2.0}}), Json::exception);
    CHECK_THROWS_AS(norm_from_json(Json{{"kind", "lq"}, {"q", 2.0}, {"n", 2}, {"x", 0}}),
                    PreconditionError);
}

TEST_CASE("norm and density json") {
    CHECK(to_json(NormSpec::lq(3, 4.0)) == Json{{"kind", "lq"}, {"q", 4.0}, {"n", 3}});
    CHECK(to_json(NormSpec::euclidean(5)) == Json{{"kind", "euclidean"}, {"n", 5}});
    const auto n2 = norm_from_json(Json{{"kind", "lq"}, {"q", 3.0}, {"n", 2}});
    CHECK(n2.q() == 3.0);
    auto eval = [](std::span<const double> x) { return norm2(x); };
    CHECK_THROWS_AS(to_json(NormSpec::custom(2, eval, eval)), PreconditionError);

    CHECK(to_json(PotentialSpec::quadratic(0.5)) == Json{{"kind", "quadratic"}, {"kappa", 0.5}});
    const Json pl = {{"kind", "piecewise_linear"}, {"knots", {{-1.0, 1.0}, {0.0, 0.0}, {1.0, 1.0}}}};
    const auto spec = potential_from_json(pl);
    CHECK(to_json(spec) == pl);
    CHECK(to_json(potential_from_json(to_json(PotentialSpec::truncated_quadratic(2.0, 0.3)))) ==
          Json{{"kind", "truncated_quadratic"}, {"kappa", 2.0}, {"R", 0.3}});

    CHECK(to_json(RadialProfile::exp_power(3.0)) == Json{{"kind", "exp_power"}, {"p", 3.0}});
    CHECK(to_json(radial_profile_from_json(Json{{"kind", "indicator"}})) ==
          Json{{"kind", "indicator"}});
}

TEST_CASE("csv formatting is stable and lossless") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(kNaN) == "nan");
    CHECK(format_double(kInf) == "inf");
    const double v = 0.1234567890123456789;
    CHECK(std::stod(format_double(v)) == v);
    CsvTable t;
    t.comments = {"schema: 1"};
    t.header = {"a", "b"};
    t.rows = {{1.0, 2.5}, {3.0, kNaN}};
    CHECK(t.to_string() == "# schema: 1\na,b\n1,2.5\n3,nan\n");
}
