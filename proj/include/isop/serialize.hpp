#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "isop/common.hpp"
#include "isop/density1d.hpp"
#include "isop/modulus.hpp"
#include "isop/norms.hpp"
#include "isop/transport.hpp"

namespace isop {

using Json = nlohmann::json;

/// Reject objects with keys outside the allowed set (config strictness).
inline void require_keys(const Json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    if (!j.is_object()) throw PreconditionError(where + ": expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const auto& a : allowed) ok = ok || (key == a);
        if (!ok) throw PreconditionError(where + ": unknown key '" + key + "'");
    }
}

inline Json to_json(const ModulusSpec& m) {
    switch (m.kind()) {
        case ModulusSpec::Kind::zero:
            return {{"kind", "zero"}};
        case ModulusSpec::Kind::power:
            return {{"kind", "power"}, {"alpha", m.alpha()}, {"p", m.p()}};
        case ModulusSpec::Kind::table: {
            Json knots = Json::array();
            for (const auto& [t, v] : m.knots()) knots.push_back({t, v});
            const char* ext = (m.extension() == ModulusSpec::TableExtension::ratio_linear)
                                  ? "ratio-linear"
                                  : "ratio-constant";
            return {{"kind", "table"}, {"knots", knots}, {"extension", ext}};
        }
        case ModulusSpec::Kind::truncated:
            return {{"kind", "truncated"}, {"base", to_json(m.base())}, {"cutoff", m.cutoff()}};
    }
    return {};
}

inline ModulusSpec modulus_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw PreconditionError("modulus: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") {
        require_keys(j, {"kind"}, "modulus[zero]");
        return ModulusSpec::zero();
    }
    if (kind == "power") {
        require_keys(j, {"kind", "alpha", "p"}, "modulus[power]");
        return ModulusSpec::power(j.at("alpha").get<double>(), j.at("p").get<double>());
    }
    if (kind == "table") {
        require_keys(j, {"kind", "knots", "extension"}, "modulus[table]");
        std::vector<std::pair<double, double>> knots;
        for (const auto& kn : j.at("knots"))
            knots.emplace_back(kn.at(0).get<double>(), kn.at(1).get<double>());
        auto ext = ModulusSpec::TableExtension::ratio_linear;
        if (j.contains("extension")) {
            const std::string e = j.at("extension").get<std::string>();
            if (e == "ratio-constant")
                ext = ModulusSpec::TableExtension::ratio_constant;
            else if (e != "ratio-linear")
                throw PreconditionError("modulus[table]: unknown extension '" + e + "'");
        }
        return ModulusSpec::table(std::move(knots), ext);
    }
    if (kind == "truncated") {
        require_keys(j, {"kind", "base", "cutoff"}, "modulus[truncated]");
        return ModulusSpec::truncated(modulus_from_json(j.at("base")), j.at("cutoff").get<double>());
    }
    throw PreconditionError("modulus: unknown kind '" + kind + "'");
}

inline Json to_json(const NormSpec& n) {
    switch (n.kind()) {
        case NormSpec::Kind::euclidean:
            return {{"kind", "euclidean"}, {"n", n.dim()}};
        case NormSpec::Kind::lq:
            return {{"kind", "lq"}, {"q", n.q()}, {"n", n.dim()}};
        case NormSpec::Kind::custom:
            throw PreconditionError("norm: custom evaluators do not serialize");
    }
    return {};
}

inline NormSpec norm_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw PreconditionError("norm: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") {
        require_keys(j, {"kind", "n"}, "norm[euclidean]");
        return NormSpec::euclidean(j.at("n").get<int>());
    }
    if (kind == "lq") {
        require_keys(j, {"kind", "q", "n"}, "norm[lq]");
        return NormSpec::lq(j.at("n").get<int>(), j.at("q").get<double>());
    }
    throw PreconditionError("norm: unknown kind '" + kind + "'");
}

inline Json to_json(const PotentialSpec& s) {
    switch (s.kind) {
        case PotentialSpec::Kind::quadratic:
            return {{"kind", "quadratic"}, {"kappa", s.kappa}};
        case PotentialSpec::Kind::power:
            return {{"kind", "power"}, {"alpha", s.alpha}, {"p", s.p}};
        case PotentialSpec::Kind::truncated_quadratic:
            return {{"kind", "truncated_quadratic"}, {"kappa", s.kappa}, {"R", s.R}};
        case PotentialSpec::Kind::piecewise_linear: {
            Json knots = Json::array();
            for (const auto& [x, g] : s.knots) knots.push_back({x, g});
            return {{"kind", "piecewise_linear"}, {"knots", knots}};
        }
    }
    return {};
}

inline PotentialSpec potential_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw PreconditionError("density: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "quadratic") {
        require_keys(j, {"kind", "kappa"}, "density[quadratic]");
        return PotentialSpec::quadratic(j.at("kappa").get<double>());
    }
    if (kind == "power") {
        require_keys(j, {"kind", "alpha", "p"}, "density[power]");
        return PotentialSpec::power(j.at("alpha").get<double>(), j.at("p").get<double>());
    }
    if (kind == "truncated_quadratic") {
        require_keys(j, {"kind", "kappa", "R"}, "density[truncated_quadratic]");
        return PotentialSpec::truncated_quadratic(j.at("kappa").get<double>(),
                                                  j.at("R").get<double>());
    }
    if (kind == "piecewise_linear") {
        require_keys(j, {"kind", "knots"}, "density[piecewise_linear]");
        std::vector<std::pair<double, double>> knots;
        for (const auto& kn : j.at("knots"))
            knots.emplace_back(kn.at(0).get<double>(), kn.at(1).get<double>());
        return PotentialSpec::piecewise_linear(std::move(knots));
    }
    throw PreconditionError("density: unknown kind '" + kind + "'");
}

inline Json to_json(const RadialProfile& r) {
    switch (r.kind) {
        case RadialProfile::Kind::exp_power:
            return {{"kind", "exp_power"}, {"p", r.p}};
        case RadialProfile::Kind::trunc_gauss:
            return {{"kind", "trunc_gauss"}, {"beta", r.beta}, {"R", r.R}};
        case RadialProfile::Kind::indicator:
            return {{"kind", "indicator"}};
    }
    return {};
}

inline RadialProfile radial_profile_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw PreconditionError("profile: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "exp_power") {
        require_keys(j, {"kind", "p"}, "profile[exp_power]");
        return RadialProfile::exp_power(j.at("p").get<double>());
    }
    if (kind == "trunc_gauss") {
        require_keys(j, {"kind", "beta", "R"}, "profile[trunc_gauss]");
        return RadialProfile::trunc_gauss(j.at("beta").get<double>(), j.at("R").get<double>());
    }
    if (kind == "indicator") {
        require_keys(j, {"kind"}, "profile[indicator]");
        return RadialProfile::indicator();
    }
    throw PreconditionError("profile: unknown kind '" + kind + "'");
}

}  // namespace isop
