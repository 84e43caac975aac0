#include "payoffset/json_io.hpp"

#include <cmath>

namespace payoffset {

namespace {

// JSON has no infinity; unbounded values are written as null.
Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const Strategy& s) { return Json(s.probs); }

Json to_json(const StrategyProfile& p) { return {{"x", to_json(p.x)}, {"y", to_json(p.y)}}; }

Json to_json(const PayoffMatrix& M) {
    Json rows = Json::array();
    for (size_t i = 0; i < M.n; ++i) {
        Json row = Json::array();
        for (size_t j = 0; j < M.n; ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return {{"entries", rows}};
}

Json to_json(const SampleRecord& r) {
    return {{"n", r.n}, {"m", r.m}, {"row_counts", r.row_counts}, {"col_counts", r.col_counts}, {"seed", r.seed}};
}

Json to_json(const HalfspaceSystem& sys) {
    Json rows = Json::array();
    for (const auto& h : sys.rows) rows.push_back({{"c", h.c}, {"b", h.b}});
    return {{"label", sys.label}, {"dim", sys.dim}, {"rows", rows}, {"box", 1.0}};
}

Json to_json(const HausdorffEstimate& e) {
    return {{"value", e.value},
            {"mode", to_string(e.mode)},
            {"resolution_or_samples", e.resolution_or_samples},
            {"directed_ab", e.directed_ab},
            {"directed_ba", e.directed_ba},
            {"upper", num(e.upper)}};
}

Json to_json(const ConstructionReport& r) {
    return {{"output", to_json(r.output)},
            {"distance", r.distance},
            {"certified_bound", r.certified_bound},
            {"membership_violation", r.membership_violation}};
}

Json to_json(const LbInstance& inst) {
    Json j;
    j["family"] = to_string(inst.family);
    j["kind"] = to_string(inst.kind);
    j["alpha"] = inst.alpha;
    j["certified_separation"] = inst.certified_separation;
    Json profiles = Json::array();
    for (const auto& p : inst.profiles) profiles.push_back(to_json(p));
    j["profiles"] = profiles;
    j["witness"] = inst.witness ? to_json(*inst.witness) : Json(nullptr);
    Json params = Json::object();
    for (const auto& [k, v] : inst.params) params[k] = v;
    j["params"] = params;
    if (inst.packing) j["packing"] = {{"D", inst.packing->D}, {"vectors", inst.packing->vectors},
                                      {"min_pairwise_l1", inst.packing->min_pairwise_l1}};
    return j;
}

Strategy strategy_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("strategy must be a JSON array");
    return Strategy(j.get<Vec>());
}

PayoffMatrix matrix_from_json(const Json& j) {
    const Json& rows = j.is_object() && j.contains("entries") ? j.at("entries") : j;
    if (!rows.is_array()) throw InputError("matrix must be {\"entries\": [[...], ...]}");
    return PayoffMatrix::from_rows(rows.get<std::vector<Vec>>());
}

StrategyProfile profile_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y"))
        throw InputError("profile needs fields x and y");
    StrategyProfile p(strategy_from_json(j.at("x")), strategy_from_json(j.at("y")));
    if (p.x.size() != p.y.size()) throw InputError("profile strategies differ in dimension");
    return p;
}

}  // namespace payoffset
