#pragma once

// Machine-readable output formats shared by the CLI and the format tests.
// Every JSON artifact carries "schema":"v1"; key order is fixed so identical
// configurations produce byte-identical payloads.

#include <json.hpp>

#include <sstream>
#include <string>

#include "containers.hpp"
#include "graph.hpp"
#include "matching.hpp"
#include "mis.hpp"
#include "numeric.hpp"

namespace midlayer {

using ordered_json = nlohmann::ordered_json;

// {"schema":"v1","n":..,"k":..,"vertices":[hex lower-then-upper],"edges":[[i,j],...]}
inline ordered_json graph_json(const LayerGraph& g) {
    ordered_json j;
    j["schema"] = "v1";
    j["n"] = g.n;
    j["k"] = g.k;
    ordered_json verts = ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v) verts.push_back(subset_to_hex(g.subset_of(v)));
    j["vertices"] = std::move(verts);
    ordered_json edges = ordered_json::array();
    for (int v = 0; v < g.vertex_count(); ++v)
        g.neighbors(v).for_each([&](int u) {
            if (u > v) edges.push_back(ordered_json::array({v, u}));
        });
    j["edges"] = std::move(edges);
    return j;
}

// {"schema":"v1","total":"<decimal>","by_size":{...},"elapsed_ms":int,"workers":int}
inline ordered_json stats_json(const EnumerationStats& s) {
    ordered_json j;
    j["schema"] = "v1";
    j["total"] = to_decimal(s.total);
    ordered_json by_size = ordered_json::object();
    for (auto& [k, v] : s.by_size) by_size[std::to_string(k)] = to_decimal(v);
    j["by_size"] = std::move(by_size);
    j["elapsed_ms"] = int(s.elapsed_ms);
    j["workers"] = s.workers;
    if (s.aborted) j["aborted"] = true;
    return j;
}

inline std::string csv_rational(const Rational& q) { return rational_to_string(q); }

inline std::string iso_report_csv_row(const IsoReport& r) {
    std::ostringstream os;
    os << r.variant << "," << csv_rational(r.lhs) << "," << csv_rational(r.rhs) << ","
       << csv_rational(r.slack) << "," << (r.hypothesis_met ? 1 : 0);
    return os.str();
}

// Per-MIS container transcript line for `containers basic`.
inline ordered_json certificate_json(const Certificate& c) {
    ordered_json j;
    j["schema"] = "v1";
    // xi packed as a hex bit string, lowest step = bit 0.
    VertexSet bits(c.xi.size());
    for (std::size_t i = 0; i < c.xi.size(); ++i)
        if (c.xi[i]) bits.set(i);
    j["xi_hex"] = bits.to_hex();
    j["C_hex"] = c.C.to_hex();
    j["Z_size"] = int(c.Z.count());
    j["stop_reason"] = stop_reason_name(c.stop_reason);
    return j;
}

inline ordered_json approx_trace_json(const ApproxPair& p, bool phi_ok, bool psi_ok,
                                      const Rational* sf_slack) {
    ordered_json j;
    j["schema"] = "v1";
    j["phi"] = p.phi;
    j["psi"] = p.psi;
    j["seed"] = p.seed;
    j["F_prime_hex"] = p.F_prime.to_hex();
    if (p.has_sf) {
        j["S_hex"] = p.S.to_hex();
        j["F_hex"] = p.F.to_hex();
    }
    ordered_json t;
    t["t0"] = p.trace.t0;
    t["t1"] = p.trace.t1;
    t["t2"] = p.trace.t2;
    t["t3"] = p.trace.t3;
    t["omega_t0"] = p.trace.omega_t0;
    t["rounds_tried"] = p.trace.rounds_tried;
    t["bounds_met"] = p.trace.bounds_met;
    j["trace"] = std::move(t);
    j["verify_phi"] = phi_ok;
    j["verify_psi"] = psi_ok;
    if (sf_slack) j["sf_slack"] = rational_to_string(*sf_slack);
    return j;
}

}  // namespace midlayer
