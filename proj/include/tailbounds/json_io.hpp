#pragma once

// JSON serialization for the public data types. Schemas:
//   tail:   {"kind":"absolute|right|left","family":"exp|gauss|step|pl",
//            "params":{...}}        exp: {"rate":r}  gauss: {"mu":m,"sigma":s}
//                                   step: {"breaks":[...],"values":[...]}
//                                   pl:   {"knots":[[t,v],...]}
//   two-sided: {"kind":"two","minus":<tail>,"plus":<tail>}
//   atoms:  {"atoms":[[value,mass],...]}
//   grid:   {"grid":[[...],...]}
//   points: {"points":[[...],...]}
//   tensor: {"d":d,"n":n,"entries":[... n^(d+1) flat, lexicographic ...]}

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tailbounds/apps.hpp"
#include "tailbounds/dependent.hpp"
#include "tailbounds/finite_solver.hpp"
#include "tailbounds/neat.hpp"
#include "tailbounds/shift.hpp"
#include "tailbounds/tail_fn.hpp"

namespace tailbounds {

inline TailKind tail_kind_from_string(const std::string& s) {
    if (s == "absolute") return TailKind::Absolute;
    if (s == "right") return TailKind::Right;
    if (s == "left") return TailKind::Left;
    throw std::invalid_argument("unknown tail kind: " + s);
}

inline std::string to_string(TailKind k) {
    switch (k) {
        case TailKind::Absolute: return "absolute";
        case TailKind::Right: return "right";
        case TailKind::Left: return "left";
    }
    return "?";
}

inline TailFn tail_from_json(const nlohmann::json& j) {
    const std::string kind_s = j.at("kind").get<std::string>();
    if (kind_s == "two") {
        throw std::invalid_argument(
            "tail_from_json: two-sided tails must be read with two_tail_from_json");
    }
    const TailKind kind = tail_kind_from_string(kind_s);
    const std::string family = j.at("family").get<std::string>();
    if (family == "summin") {
        if (kind != TailKind::Absolute) {
            throw std::invalid_argument(
                "tail_from_json: summin tails are absolute");
        }
        return TailFn::sum_min(tail_from_json(j.at("minus")),
                               tail_from_json(j.at("plus")));
    }
    const auto& p = j.at("params");
    if (family == "exp") {
        return TailFn::exponential(kind, p.at("rate").get<double>());
    }
    if (family == "gauss") {
        return TailFn::gaussian(kind, p.at("mu").get<double>(),
                                p.at("sigma").get<double>());
    }
    if (family == "step") {
        return TailFn::step(kind, p.at("breaks").get<std::vector<double>>(),
                            p.at("values").get<std::vector<double>>());
    }
    if (family == "pl") {
        std::vector<std::pair<double, double>> knots;
        for (const auto& kn : p.at("knots")) {
            knots.emplace_back(kn.at(0).get<double>(), kn.at(1).get<double>());
        }
        return TailFn::piecewise_linear(kind, std::move(knots));
    }
    throw std::invalid_argument("unknown tail family: " + family);
}

inline nlohmann::json tail_to_json(const TailFn& f) {
    nlohmann::json j;
    j["kind"] = to_string(f.kind());
    switch (f.family()) {
        case TailFamily::Exponential:
            j["family"] = "exp";
            j["params"] = {{"rate", f.rate()}};
            break;
        case TailFamily::Gaussian:
            j["family"] = "gauss";
            j["params"] = {{"mu", f.mu()}, {"sigma", f.sigma()}};
            break;
        case TailFamily::Step:
            j["family"] = "step";
            j["params"] = {{"breaks", f.breaks()}, {"values", f.values()}};
            break;
        case TailFamily::PiecewiseLinear: {
            j["family"] = "pl";
            nlohmann::json knots = nlohmann::json::array();
            for (const auto& [t, v] : f.knots()) knots.push_back({t, v});
            j["params"] = {{"knots", std::move(knots)}};
            break;
        }
        case TailFamily::SumMin:
            j["family"] = "summin";
            j["minus"] = tail_to_json(f.sum_min_minus());
            j["plus"] = tail_to_json(f.sum_min_plus());
            break;
    }
    return j;
}

inline TwoTail two_tail_from_json(const nlohmann::json& j) {
    if (j.at("kind").get<std::string>() != "two") {
        throw std::invalid_argument("two_tail_from_json: kind must be \"two\"");
    }
    return TwoTail{tail_from_json(j.at("minus")), tail_from_json(j.at("plus"))};
}

inline nlohmann::json two_tail_to_json(const TwoTail& tt) {
    return {{"kind", "two"},
            {"minus", tail_to_json(tt.minus)},
            {"plus", tail_to_json(tt.plus)}};
}

inline nlohmann::json atoms_to_json(const std::vector<Atom>& atoms) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Atom& a : atoms) arr.push_back({a.value, a.mass});
    return {{"atoms", std::move(arr)}};
}

inline std::vector<Atom> atoms_from_json(const nlohmann::json& j) {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) {
        atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    }
    return atoms;
}

inline Grid grid_from_json(const nlohmann::json& j) {
    Grid g;
    for (const auto& c : j.at("grid")) {
        g.coords.push_back(c.get<std::vector<double>>());
    }
    return g;
}

inline nlohmann::json grid_to_json(const Grid& g) {
    return {{"grid", g.coords}};
}

inline PointSet points_from_json(const nlohmann::json& j) {
    std::vector<Point> pts;
    for (const auto& p : j.at("points")) {
        pts.push_back(p.get<std::vector<double>>());
    }
    return PointSet::of(std::move(pts));
}

inline nlohmann::json points_to_json(const PointSet& v) {
    return {{"points", v.points}};
}

inline SchurTensor tensor_from_json(const nlohmann::json& j) {
    SchurTensor m;
    m.d = j.at("d").get<std::size_t>();
    m.n = j.at("n").get<std::size_t>();
    m.entries = j.at("entries").get<std::vector<double>>();
    m.check();
    return m;
}

inline nlohmann::json solve_result_to_json(const SolveResult& r) {
    nlohmann::json j;
    j["value"] = r.value;
    j["grid"] = r.grid.coords;
    if (r.c) j["c"] = *r.c;
    nlohmann::json witness = nlohmann::json::array();
    for (const auto& coord : r.witness) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Atom& a : coord) arr.push_back({a.value, a.mass});
        witness.push_back(std::move(arr));
    }
    j["witness"] = std::move(witness);
    return j;
}

}  // namespace tailbounds
