#pragma once

#include <json.hpp>

#include "blowup_ring.hpp"
#include "closed_forms.hpp"
#include "rational.hpp"
#include "residues.hpp"

namespace jkvol {

using Json = nlohmann::json; // keys serialize sorted, so output is byte-stable

inline void put_rational(Json& j, const std::string& key, const Rational& q) {
    j[key] = to_string(q);
    j[key + "Approx"] = approx_string(q);
}

inline Json datum_to_json(const MeromorphicDatum& d) {
    Json j;
    j["sign"] = d.sign;
    Json coeffs = Json::array();
    for (const auto& c : d.exp_coeffs) coeffs.push_back(to_string(c));
    j["expCoeffs"] = std::move(coeffs);
    Json poles = Json::array();
    for (const auto& p : d.pole_orders)
        poles.push_back(Json{{"i", p.i}, {"j", p.j}, {"order", p.order}});
    j["poleOrders"] = std::move(poles);
    return j;
}

inline Json census_to_json(const ChamberCensus& c, int n) {
    Json j;
    if (n == 1) {
        j["fPlus"] = c.f_plus;
    } else {
        j["a"] = c.a;
        j["b"] = c.b;
    }
    j["outside"] = c.outside;
    j["wall"] = c.wall;
    j["total"] = c.total;
    return j;
}

inline Json report_to_json(const VolumeReport& r) {
    Json j;
    j["command"] = r.command;
    j["n"] = r.n;
    j["m"] = r.m;
    if (!r.weights.empty()) {
        Json w = Json::array();
        for (const auto& d : r.weights) w.push_back(to_string(d));
        j["weights"] = std::move(w);
    }
    j["stability"] = r.stability;
    j["dimension"] = r.dimension;
    j["method"] = r.method;
    put_rational(j, "gitVolume", r.git_volume);
    put_rational(j, "cmScale", r.cm_scale_factor);
    put_rational(j, "cmVolume", r.cm_volume);
    if (r.has_census) j["census"] = census_to_json(r.census, r.n);
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    if (!r.paper_anchors.empty()) {
        Json a;
        for (const auto& [k, v] : r.paper_anchors) a[k] = v;
        j["paper_anchors"] = std::move(a);
    }
    if (r.is_dp4) {
        put_rational(j, "dp4Sum", r.dp4_sum);
        put_rational(j, "cUsed", r.dp4_c_used);
        j["cPaper"] = r.dp4_c_paper_value.get_str();
        j["cRing"] = r.dp4_c_ring_value.get_str();
        j["cMode"] = r.c_mode;
        j["cMismatch"] = r.c_mismatch;
    }
    return j;
}

inline Json ring_trace_to_json(const RingTrace& t) {
    Json j;
    j["n"] = t.n;
    Json xp = Json::array();
    for (size_t k = 0; k < t.xpows.size(); ++k)
        xp.push_back(Json{{"k", k + 1},
                          {"A", t.xpows[k].A.get_str()},
                          {"B", t.xpows[k].B.get_str()}});
    j["xPowers"] = std::move(xp);
    Json mp = Json::array();
    for (size_t idx = 0; idx < t.mixed.size(); ++idx)
        mp.push_back(Json{{"i", idx + 2},
                          {"reduction", t.mixed[idx].reduction.get_str()},
                          {"printed", t.mixed[idx].printed.get_str()},
                          {"interBacksolve", t.mixed[idx].inter_backsolve.get_str()}});
    j["mixedPowers"] = std::move(mp);
    j["cRing"] = t.c_ring.get_str();
    j["cPaper"] = t.c_paper.get_str();
    return j;
}

} // namespace jkvol
