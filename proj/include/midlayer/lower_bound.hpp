#pragma once

// The lower-bound construction: one endpoint per canonical-matching edge plus
// m planted defect pairs (v_i, v_i'), its validity checks, the C6 overlap
// audit, the exact lower-bound series, and the small-k random-set estimate.

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "mis.hpp"
#include "numeric.hpp"

namespace midlayer {

struct ConstructionParams {
    int direction = 1;
    // Defect pairs (v_i upper with k ∉ v_i, v_i' lower with k ∈ v_i').
    std::vector<std::pair<Subset, Subset>> defects;
    // One bit per non-blocked M_k edge, in edge order: 1 = upper endpoint.
    std::vector<std::uint8_t> endpoint_choices;
    // Relaxed placements (pairwise defect distance < 10) exercise the
    // machinery at small d; they carry no counting meaning.
    bool relax_min_defect_distance = false;
};

struct BlockedEdges {
    std::vector<int> blocked;    // indices into canonical_matching(k).edges
    std::vector<int> unblocked;  // complement, ascending
    std::vector<std::size_t> per_defect;  // blocked count per defect
    bool disjoint = true;
};

inline BlockedEdges blocked_edges(const LayerGraph& g, const ConstructionParams& p) {
    CanonicalMatching M = g.canonical_matching(p.direction);
    BlockedEdges out;
    std::vector<int> owner(M.edges.size(), -1);
    for (std::size_t i = 0; i < p.defects.size(); ++i) {
        VertexSet nb = g.empty_set();
        nb |= g.neighbors(g.vertex_of(p.defects[i].first));
        nb |= g.neighbors(g.vertex_of(p.defects[i].second));
        std::size_t cnt = 0;
        for (std::size_t e = 0; e < M.edges.size(); ++e) {
            if (nb.test(std::size_t(M.edges[e].first)) || nb.test(std::size_t(M.edges[e].second))) {
                ++cnt;
                if (owner[e] >= 0 && owner[e] != int(i)) out.disjoint = false;
                owner[e] = int(i);
            }
        }
        out.per_defect.push_back(cnt);
    }
    for (std::size_t e = 0; e < M.edges.size(); ++e)
        (owner[e] >= 0 ? out.blocked : out.unblocked).push_back(int(e));
    return out;
}

inline void validate_defects(const LayerGraph& g, const ConstructionParams& p) {
    require(p.direction >= 1 && p.direction <= g.n, errc::direction_out_of_range,
            "construction direction");
    std::int64_t d = g.k;
    require(std::int64_t(p.defects.size()) <= d * d, errc::invalid_defects, "m exceeds d^2");
    Subset kbit = Subset(1) << (p.direction - 1);
    for (auto& [v, vp] : p.defects) {
        require(popcount64(v) == g.k && !(v & kbit), errc::invalid_defects,
                "v_i must be an upper vertex avoiding the direction");
        require(popcount64(vp) == g.k - 1 && (vp & kbit), errc::invalid_defects,
                "v_i' must be a lower vertex containing the direction");
        require(g.distance(g.vertex_of(v), g.vertex_of(vp)) == 3, errc::invalid_defects,
                "d(v_i, v_i') must equal 3");
    }
    for (std::size_t i = 0; i < p.defects.size(); ++i)
        for (std::size_t j = i + 1; j < p.defects.size(); ++j) {
            int dist = g.distance(g.vertex_of(p.defects[i].first), g.vertex_of(p.defects[j].first));
            if (!p.relax_min_defect_distance)
                require(dist >= 10, errc::invalid_defects, "defects closer than distance 10");
        }
}

// Builds the unique maximal independent set containing all defect vertices and
// the chosen endpoints of the unblocked canonical edges.
inline VertexSet generate_construction(const LayerGraph& g, const ConstructionParams& p) {
    validate_defects(g, p);
    CanonicalMatching M = g.canonical_matching(p.direction);
    BlockedEdges be = blocked_edges(g, p);
    for (std::size_t i = 0; i < be.per_defect.size(); ++i)
        require(be.per_defect[i] == std::size_t(2 * g.k - 2), errc::invalid_defects,
                "a defect blocks a wrong number of canonical edges");
    require(be.disjoint, errc::invalid_defects, "defect blocked-edge sets overlap");
    require(p.endpoint_choices.size() == be.unblocked.size(), errc::choice_on_blocked_edge,
            "choice vector must address exactly the non-blocked edges");

    VertexSet seed = g.empty_set();
    for (auto& [v, vp] : p.defects) {
        seed.set(std::size_t(g.vertex_of(v)));
        seed.set(std::size_t(g.vertex_of(vp)));
    }
    for (std::size_t i = 0; i < be.unblocked.size(); ++i) {
        auto& e = M.edges[std::size_t(be.unblocked[i])];
        seed.set(std::size_t(p.endpoint_choices[i] ? e.first : e.second));
    }
    require(classify_set(view_of(g), seed) != SetClass::NotIndependent, errc::invalid_defects,
            "chosen vertices are not independent");
    return complete_to_mis(view_of(g), seed);
}

// Emits all 2^{|M_k|} defect-free completions; the sink may stop early.
inline BigInt enumerate_construction_m0(const LayerGraph& g, int direction,
                                        const std::function<bool(const VertexSet&)>& sink,
                                        std::uint64_t budget = std::uint64_t(1) << 26) {
    CanonicalMatching M = g.canonical_matching(direction);
    std::size_t ne = M.edges.size();
    require(ne < 63 && (std::uint64_t(1) << ne) <= budget, errc::budget_exceeded,
            "2^|M_k| completions exceed the budget");
    BigInt count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << ne); ++mask) {
        VertexSet seed = g.empty_set();
        for (std::size_t e = 0; e < ne; ++e)
            seed.set(std::size_t((mask >> e) & 1 ? M.edges[e].first : M.edges[e].second));
        VertexSet I = complete_to_mis(view_of(g), seed);
        ++count;
        if (!sink(I)) break;
    }
    return count;
}

struct LowerBoundValue {
    Rational y = 0;                       // (d-1)^2 C(2d-2,d-1) / 2^{2d-1}
    std::vector<Rational> exact_terms;    // term_m = (y^m/m!) 2^{C(2d-2,d-1)}
    Real log2_value = 0;                  // log2 of the partial sum
    Real taylor_remainder_bound = 0;      // e^y y^{M+1}/(M+1)!
    unsigned precision_bits = 0;
};

inline LowerBoundValue lower_bound_value(int d, int m_max, unsigned precision_bits = 128) {
    require(d >= 2, errc::precondition_failed, "need d >= 2");
    require(std::int64_t(m_max) <= std::int64_t(d) * d, errc::precondition_failed, "m_max <= d^2");
    LowerBoundValue out;
    out.precision_bits = precision_bits;
    BigInt C = binomial(2 * d - 2, d - 1);
    out.y = Rational(BigInt(d - 1) * (d - 1) * C) / Rational(BigInt(1) << unsigned(2 * d - 1));

    PrecisionGuard guard(precision_bits + 64);
    BigInt two_pow_c = BigInt(1) << C.convert_to<unsigned>();
    Rational series = 0;  // sum of y^m / m!
    Rational term = 1;
    for (int m = 0; m <= m_max; ++m) {
        if (m > 0) term = term * out.y / m;
        series += term;
        out.exact_terms.push_back(term * Rational(two_pow_c));
    }
    out.log2_value = Real(C) + log2(to_real(series));
    Real y = to_real(out.y);
    Real rem = exp(y);
    for (int i = 1; i <= m_max + 1; ++i) rem = rem * y / i;
    out.taylor_remainder_bound = rem;
    return out;
}

struct C6Audit {
    long long occupied = 0;
    long long pattern_violations = 0;
    long long hexagons = 0;
};

// Every occupied hexagon U_v (all four M_{k1}/M_{k2} edges meet I) must
// intersect I in one of the three legal patterns.
inline C6Audit c6_pattern_audit(const LayerGraph& g, const VertexSet& I, int k1, int k2, int k3) {
    require(k1 != k2 && k1 != k3 && k2 != k3, errc::directions_not_distinct,
            "hexagon directions must be distinct");
    for (int k : {k1, k2, k3})
        require(k >= 1 && k <= g.n, errc::direction_out_of_range, "direction outside [n]");
    require(classify_set(view_of(g), I) == SetClass::Maximal, errc::not_maximal,
            "audit runs on maximal sets");

    Subset b1 = Subset(1) << (k1 - 1), b2 = Subset(1) << (k2 - 1), b3 = Subset(1) << (k3 - 1);
    Subset avoid = b1 | b2 | b3;
    C6Audit out;

    // Iterate (d-2)-subsets of the remaining ground elements.
    std::vector<int> rest;
    for (int e = 1; e <= g.n; ++e)
        if (!(avoid & (Subset(1) << (e - 1)))) rest.push_back(e);
    int want = g.k - 2;
    std::vector<int> idx(std::size_t(std::max(want, 0)));
    auto run_one = [&](Subset v) {
        ++out.hexagons;
        int lo1 = g.vertex_of(v | b1), lo2 = g.vertex_of(v | b2), lo3 = g.vertex_of(v | b3);
        int up12 = g.vertex_of(v | b1 | b2), up13 = g.vertex_of(v | b1 | b3),
            up23 = g.vertex_of(v | b2 | b3);
        auto occ = [&](int up, int lo) {
            return I.test(std::size_t(up)) || I.test(std::size_t(lo));
        };
        // M_{k1} edges: (up12, lo2), (up13, lo3); M_{k2}: (up12, lo1), (up23, lo3).
        if (!(occ(up12, lo2) && occ(up13, lo3) && occ(up12, lo1) && occ(up23, lo3))) return;
        ++out.occupied;
        auto in = [&](int v2) { return I.test(std::size_t(v2)); };
        bool p_low = in(lo1) && in(lo2) && in(lo3) && !in(up12) && !in(up13) && !in(up23);
        bool p_up = in(up12) && in(up13) && in(up23) && !in(lo1) && !in(lo2) && !in(lo3);
        bool p_mix = in(up12) && in(lo3) && !in(lo1) && !in(lo2) && !in(up13) && !in(up23);
        if (!(p_low || p_up || p_mix)) ++out.pattern_violations;
    };
    if (want < 0) return out;  // no hexagons at k = 1
    auto rec = [&](auto&& self, int start, int chosen, Subset acc) -> void {
        if (chosen == want) {
            run_one(acc);
            return;
        }
        for (int i = start; i < int(rest.size()); ++i)
            self(self, i + 1, chosen + 1, acc | (Subset(1) << (rest[std::size_t(i)] - 1)));
    };
    rec(rec, 0, 0, 0);
    return out;
}

struct SmallKEstimate {
    Rational bad_prob_bound = 0;  // C(n,k-1) * 2^{-1} (1 - 2^{-(k-1)})^{n-k+1}
    double empirical_fail_rate = 0;
    bool degenerate = false;  // k = 1 boundary
    long long samples = 0;
};

// Random lower set X (each vertex with probability 1/2); I_X = X ∪ (L_k \ N(X))
// is maximal iff no lower vertex is bad. Seeded, counter-based draws.
inline SmallKEstimate small_k_estimate(int n, int k, long long samples, std::uint64_t seed) {
    require(k >= 1 && k <= n, errc::invalid_layer, "need 1 <= k <= n");
    LayerGraph g = LayerGraph::build(n, k);
    SmallKEstimate out;
    out.samples = samples;
    out.degenerate = (k == 1);
    Rational per_vertex = Rational(1, 2) *
                          rational_pow(1 - Rational(1, BigInt(1) << unsigned(k - 1)),
                                       std::uint64_t(n - k + 1));
    out.bad_prob_bound = Rational(binomial(n, k - 1)) * per_vertex;

    long long fails = 0;
    for (long long s = 0; s < samples; ++s) {
        VertexSet X = g.empty_set();
        for (int v = 0; v < g.lower_count(); ++v)
            if (rng_bernoulli(0.5, seed, std::uint64_t(s), std::uint64_t(v))) X.set(std::size_t(v));
        VertexSet I = X;
        VertexSet blockedUp = g.neighborhood(X);
        for (int v = g.lower_count(); v < g.vertex_count(); ++v)
            if (!blockedUp.test(std::size_t(v))) I.set(std::size_t(v));
        if (classify_set(view_of(g), I) != SetClass::Maximal) ++fails;
    }
    out.empirical_fail_rate = samples ? double(fails) / double(samples) : 0.0;
    return out;
}

}  // namespace midlayer
