#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "schurz/diagram.hpp"
#include "schurz/duality.hpp"
#include "schurz/errors.hpp"
#include "schurz/eval_result.hpp"
#include "schurz/integral.hpp"
#include "schurz/poset.hpp"

namespace schurz {

using json = nlohmann::json;

// Tableau file format: {"cells": [{"row": i, "col": j, "k": k}, ...]}.
inline json tableau_to_json(const GeneralTableau& t) {
    json cells = json::array();
    for (std::size_t i = 0; i < t.shape().cells().size(); ++i) {
        const Cell& c = t.shape().cells()[i];
        cells.push_back({{"row", c.row}, {"col", c.col}, {"k", t.exponents()[i]}});
    }
    return json{{"cells", cells}};
}

inline GeneralTableau tableau_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array())
        throw parse_error("tableau JSON needs a \"cells\" array");
    std::vector<std::pair<Cell, int>> entries;
    for (const auto& e : j["cells"]) {
        if (!e.contains("row") || !e.contains("col") || !e.contains("k"))
            throw parse_error("tableau cell needs row, col and k");
        entries.push_back(
            {Cell{e["row"].get<int>(), e["col"].get<int>()}, e["k"].get<int>()});
    }
    return GeneralTableau::from_cells(entries);
}

// Diagonal-constancy is validated when a diagonal tableau is requested.
inline DiagonalTableau diagonal_tableau_from_json(const json& j) {
    GeneralTableau g = tableau_from_json(j);
    std::map<int, int> diag;
    for (std::size_t i = 0; i < g.shape().cells().size(); ++i) {
        const Cell& c = g.shape().cells()[i];
        const int d = c.col - c.row;
        auto it = diag.find(d);
        if (it == diag.end()) diag[d] = g.exponents()[i];
        else if (it->second != g.exponents()[i])
            throw parse_error("exponents are not constant on diagonal " +
                              std::to_string(d));
    }
    return DiagonalTableau(g.shape(), std::move(diag));
}

inline json poset_to_json(const TwoLabeledPoset& p) {
    json elems = json::array();
    for (const PosetElem& e : p.elements()) elems.push_back({e.x, e.y});
    json covers = json::array();
    for (auto [a, b] : p.covers()) {
        const PosetElem& ea = p.elements()[a];
        const PosetElem& eb = p.elements()[b];
        covers.push_back({{ea.x, ea.y}, {eb.x, eb.y}});
    }
    json labels = json::object();
    for (std::size_t i = 0; i < p.size(); ++i)
        labels[elem_name(p.elements()[i])] =
            std::string(1, dot_char(p.labels()[i]));
    return json{{"elements", elems}, {"covers", covers}, {"labels", labels}};
}

inline json eval_result_to_json(const EvalResult& r) {
    json j{{"N", r.n},
           {"error_estimate", r.error_estimate},
           {"mode", r.mode == EvalMode::Rational ? "rational" : "float"}};
    if (r.mode == EvalMode::Rational) j["value"] = r.exact.get_str();
    else j["value"] = r.value;
    return j;
}

inline json verify_report_to_json(const VerifyReport& r) {
    json meta = json::object();
    for (auto& [k, v] : r.meta) meta[k] = v;
    return json{{"name", r.name},         {"lhs", r.lhs},
                {"rhs", r.rhs},           {"abs_diff", r.abs_diff},
                {"tolerance", r.tolerance}, {"pass", r.pass},
                {"exact", r.exact},       {"meta", meta}};
}

inline json mc_estimate_to_json(const McEstimate& e) {
    return json{{"mean", e.mean},       {"stderr", e.stderr_},
                {"samples", e.samples}, {"accepted", e.accepted},
                {"seed", e.seed},       {"batches", e.batches},
                {"rng", e.rng}};
}

struct VerifiedPair {
    RelationPair pair;
    bool verified = false;
    long n = 0;
    double abs_diff = 0.0;
};

inline json relations_to_json(DualityKind kind, int weight_max,
                              const std::vector<VerifiedPair>& pairs) {
    json list = json::array();
    for (const auto& vp : pairs) {
        json entry{{"lhs", format_sequence(vp.pair.lhs)},
                   {"rhs", format_sequence(vp.pair.rhs)},
                   {"self_dual", vp.pair.self_dual}};
        if (vp.verified)
            entry["verified"] = json{{"N", vp.n}, {"abs_diff", vp.abs_diff}};
        list.push_back(entry);
    }
    return json{{"kind", kind == DualityKind::LR ? "lr" : "tau"},
                {"weight_max", weight_max},
                {"pairs", list}};
}

} // namespace schurz
