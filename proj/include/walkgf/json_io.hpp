#pragma once

#include <json.hpp>

#include "walkgf/chain.hpp"
#include "walkgf/general_gf.hpp"
#include "walkgf/polynomial.hpp"
#include "walkgf/puiseux.hpp"
#include "walkgf/rational_gf.hpp"
#include "walkgf/verify.hpp"

namespace walkgf {

using json = nlohmann::json;

// Coefficients travel as "p/q" strings end to end; nothing downstream should
// ever see a float.

inline json to_json(const Rational& r) { return r.str(); }

inline json to_json(const Polynomial& p) {
    json j = json::object();
    for (const auto& [e, c] : p.coeffs()) j[std::to_string(e)] = c.str();
    return j;
}

inline json to_json(const PuiseuxSeries& s) {
    json arr = json::array();
    for (const auto& [k, c] : s.raw_coeffs())
        arr.push_back(json::array({s.exponent_of(k).str(), c.str()}));
    return arr;
}

inline json to_json(const WalkSpec& w) {
    return json{{"y", w.y}, {"b", w.b}, {"m", w.m}, {"start", w.s}, {"p", w.p.str()}};
}

inline json to_json(const RationalGF& gf) {
    return json{{"numerator", to_json(gf.num())},
                {"denominator", to_json(gf.den())},
                {"normalization", {{"shift", gf.shift()}, {"scale", gf.scale()}}}};
}

inline json to_json(const StringTerm& t) {
    return json{{"small_weights", t.small_weights}, {"large_weights", t.large_weights},
                {"lambda", t.lambda},               {"permutations", t.p_count},
                {"mu_index", t.mu_index},           {"y", t.y},
                {"b", t.b}};
}

inline json to_json(const VerifyReport& r) {
    json j{{"formula", r.cell.formula},
           {"spec", {{"y", r.cell.y}, {"b", r.cell.b}, {"m", r.cell.m}, {"start", r.cell.s}}},
           {"order", r.cell.order},
           {"pass", r.pass},
           {"orders_checked", r.orders_checked},
           {"normalization", {{"shift", r.norm_shift}, {"scale", r.norm_scale}}},
           {"wall_ms", r.wall_ms}};
    if (r.cell.formula == "single-barrier") j["spec"]["k"] = r.cell.k;
    if (r.first_mismatch) {
        j["first_mismatch"] = r.first_mismatch->str();
        j["mismatch_delta"] = r.mismatch_delta.str();
    }
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace walkgf
