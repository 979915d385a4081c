#pragma once

// The induced-matching assignment M(I): the ≺-first maximum induced matching
// whose every edge meets I in exactly one endpoint and whose vertex set has no
// neighbors in I \ V(M). Also the direction profiles, the typical-structure
// classifier, nice-triplet counts and the Hujter-Tuza stability profile.
//
// Key structural fact used by the search (and verified against a definitional
// oracle in the tests): an edge (u,v) with u in I can belong to a valid M only
// when v's I-neighborhood is exactly {u}. Otherwise some z in N(v) ∩ I \ {u}
// would have to be matched (isolation), yet z~v is then a cross edge between
// matching edges. With that filter, two candidate edges conflict iff they
// share the I-endpoint or their non-I endpoints are adjacent, and the
// isolation constraint holds automatically.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "isoperimetry.hpp"
#include "matching_types.hpp"
#include "mis.hpp"
#include "numeric.hpp"
#include "report.hpp"

namespace midlayer {

struct MatchingSearchOptions {
    std::uint64_t node_budget = 100'000'000;
    // When set, ties at maximum size prefer more edges in this canonical
    // direction before the lexicographic tiebreak.
    std::optional<int> prefer_direction;
    const VertexSet* mask = nullptr;
};

namespace detail {

struct CandidateEdge {
    int a, b;     // (min,max) endpoints
    int i_end;    // the endpoint inside I
    int other;    // the endpoint outside I
    int weight;   // 1 if in the preferred direction
};

struct ComponentBest {
    int size = -1;
    long long weight = -1;
    std::vector<int> chosen;  // candidate indices, ascending
};

// Exhaustive include/exclude DFS over one conflict component, in ascending
// candidate order. Pass 1 maximizes (size, weight); pass 2 stops at the first
// (lexicographically least) selection attaining the optimum.
struct ComponentSearch {
    const std::vector<CandidateEdge>* cand = nullptr;
    const std::vector<VertexSet>* conflict = nullptr;  // над candidate indices
    std::vector<int> members;                          // ascending candidate indices
    std::uint64_t* nodes = nullptr;
    std::uint64_t budget = 0;

    ComponentBest best;
    bool find_first = false;
    bool done = false;
    std::vector<int> cur;

    void run(std::size_t pos, VertexSet blocked, int weight) {
        if (done) return;
        if (++*nodes > budget) fail(errc::budget_exceeded, "matching search node budget");
        int remaining = 0;
        for (std::size_t j = pos; j < members.size(); ++j)
            if (!blocked.test(std::size_t(members[j]))) ++remaining;
        int ub_size = int(cur.size()) + remaining;
        if (ub_size < best.size && !find_first) return;
        if (find_first && ub_size < best.size) return;

        if (pos == members.size()) {
            int sz = int(cur.size());
            long long w = weight;
            if (!find_first) {
                if (sz > best.size || (sz == best.size && w > best.weight)) {
                    best.size = sz;
                    best.weight = w;
                }
            } else if (sz == best.size && w == best.weight) {
                best.chosen = cur;
                done = true;
            }
            return;
        }
        int c = members[pos];
        if (!blocked.test(std::size_t(c))) {
            // include first: yields lexicographically least selections first
            cur.push_back(c);
            VertexSet nb = blocked;
            nb |= (*conflict)[std::size_t(c)];
            run(pos + 1, nb, weight + (*cand)[std::size_t(c)].weight);
            cur.pop_back();
        }
        if (done) return;
        run(pos + 1, blocked, weight);
    }
};

inline std::vector<CandidateEdge> candidate_edges(GraphView g, const VertexSet& I,
                                                  const VertexSet& mask,
                                                  const LayerGraph* lg, std::optional<int> dir) {
    std::vector<CandidateEdge> out;
    for (int v = 0; v < g.n; ++v) {
        if (!mask.test(std::size_t(v)) || I.test(std::size_t(v))) continue;
        VertexSet nbI = g.neighbors(v) & mask & I;
        if (nbI.count() != 1) continue;
        int u = nbI.lowest();
        CandidateEdge e;
        e.a = std::min(u, v);
        e.b = std::max(u, v);
        e.i_end = u;
        e.other = v;
        e.weight = 0;
        if (lg && dir) {
            int xu = lg->is_upper(u) ? u : v;
            int yl = lg->is_upper(u) ? v : u;
            if (lg->edge_direction(xu, yl) == *dir) e.weight = 1;
        }
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(),
              [](const CandidateEdge& x, const CandidateEdge& y) {
                  return std::make_pair(x.a, x.b) < std::make_pair(y.a, y.b);
              });
    return out;
}

inline InducedMatching assign_matching_impl(GraphView g, const VertexSet& I,
                                            const LayerGraph* lg,
                                            const MatchingSearchOptions& opt) {
    VertexSet mask = opt.mask ? *opt.mask : VertexSet::full(std::size_t(g.n));
    require(classify_set(g, I, &mask) != SetClass::NotIndependent, errc::not_independent,
            "assignment needs an independent set");

    auto cand = candidate_edges(g, I, mask, lg, opt.prefer_direction);
    std::size_t nc = cand.size();
    std::vector<VertexSet> conflict(nc, VertexSet(nc));
    for (std::size_t i = 0; i < nc; ++i)
        for (std::size_t j = i + 1; j < nc; ++j) {
            bool clash = cand[i].i_end == cand[j].i_end ||
                         g.neighbors(cand[i].other).test(std::size_t(cand[j].other));
            if (clash) {
                conflict[i].set(j);
                conflict[j].set(i);
            }
        }

    // Conflict components are independent; per-component optima compose to the
    // global ≺-first solution (sizes and weights add, lexicographic order of
    // the union is decided inside whichever component differs first).
    std::vector<int> comp(nc, -1);
    std::vector<std::vector<int>> groups;
    for (std::size_t i = 0; i < nc; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{int(i)}, members;
        comp[i] = int(groups.size());
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            conflict[std::size_t(x)].for_each([&](int y) {
                if (comp[std::size_t(y)] < 0) {
                    comp[std::size_t(y)] = int(groups.size());
                    stack.push_back(y);
                }
            });
        }
        std::sort(members.begin(), members.end());
        groups.push_back(std::move(members));
    }

    std::uint64_t nodes = 0;
    std::vector<std::pair<int, int>> edges;
    for (auto& members : groups) {
        ComponentSearch s;
        s.cand = &cand;
        s.conflict = &conflict;
        s.members = members;
        s.nodes = &nodes;
        s.budget = opt.node_budget;
        s.run(0, VertexSet(nc), 0);
        s.find_first = true;
        s.done = false;
        s.cur.clear();
        s.run(0, VertexSet(nc), 0);
        for (int c : s.best.chosen) edges.emplace_back(cand[std::size_t(c)].a, cand[std::size_t(c)].b);
    }
    return InducedMatching::of(std::move(edges));
}

}  // namespace detail

// General-graph form (no direction refinement available).
inline InducedMatching assign_matching(GraphView g, const VertexSet& I,
                                       const MatchingSearchOptions& opt = {}) {
    return detail::assign_matching_impl(g, I, nullptr, opt);
}

inline InducedMatching assign_matching(const LayerGraph& g, const VertexSet& I,
                                       const MatchingSearchOptions& opt = {}) {
    return detail::assign_matching_impl(view_of(g), I, &g, opt);
}

// Number of edges of M lying in canonical direction k.
inline int canonical_overlap(const LayerGraph& g, const InducedMatching& M, int k) {
    require(k >= 1 && k <= g.n, errc::direction_out_of_range, "direction must lie in [n]");
    int c = 0;
    for (auto& e : M.edges) {
        int xu = g.is_upper(e.first) ? e.first : e.second;
        int yl = g.is_upper(e.first) ? e.second : e.first;
        if (g.edge_direction(xu, yl) == k) ++c;
    }
    return c;
}

struct DirectionProfile {
    std::vector<int> counts;  // counts[k-1] = |B_k^1|, k in [n]
    int matching_size = 0;
    Rational beta = 0;  // |M(I)| = (1-beta) C(2d-2,d-1)
};

inline DirectionProfile direction_profile(const LayerGraph& g, const VertexSet& I,
                                          const MatchingSearchOptions& opt = {}) {
    InducedMatching M = assign_matching(g, I, opt);
    DirectionProfile p;
    p.counts.assign(std::size_t(g.n), 0);
    for (auto& e : M.edges) {
        int xu = g.is_upper(e.first) ? e.first : e.second;
        int yl = g.is_upper(e.first) ? e.second : e.first;
        ++p.counts[std::size_t(g.edge_direction(xu, yl) - 1)];
    }
    p.matching_size = int(M.size());
    p.beta = 1 - Rational(BigInt(M.size())) / Rational(binomial(g.n - 1, g.k - 1));
    return p;
}

struct ClassificationThresholds {
    Rational j1 = 0, j2 = 0, u = 0;  // absolute matching-size thresholds
    bool degenerate = false;         // a multiplier fell outside (0,1)

    static ClassificationThresholds defaults(const LayerGraph& g) {
        double d = double(g.k);
        double logd = std::log2(d);
        Rational base = BigInt(binomial(g.n - 1, g.k - 1));
        double m1 = 1 - 2 * std::pow(logd, 3) / d;
        double m2 = 1 - 2 * std::pow(logd, 5) / std::pow(d, 1.5);
        double mu = 1 - 25 * std::pow(logd, 5) / std::sqrt(d);
        ClassificationThresholds t;
        t.j1 = Rational(m1) * base;
        t.j2 = Rational(m2) * base;
        t.u = Rational(mu) * base;
        t.degenerate = !(m1 > 0 && m1 < 1 && m2 > 0 && m2 < 1 && mu > 0 && mu < 1);
        return t;
    }
};

// Theorem's typical-structure predicate at a fixed direction.
inline bool typical_with_direction(const LayerGraph& g, const VertexSet& I, int k) {
    VertexSet rest = I;
    rest.and_not(g.matched_vertices(k));
    for (auto& comp : g.linked_components(rest, 3))
        if (comp.count() > 2) return false;
    return true;
}

// Smallest k such that every 3-linked component of I \ V(M_k) has size <= 2.
inline std::optional<int> classify_typical(const LayerGraph& g, const VertexSet& I) {
    require(classify_set(view_of(g), I) == SetClass::Maximal, errc::not_maximal,
            "classification needs a maximal independent set");
    for (int k = 1; k <= g.n; ++k)
        if (typical_with_direction(g, I, k)) return k;
    return std::nullopt;
}

struct NiceTripletCount {
    BigInt count = 0;
    Rational lower_bound = 0;  // (2d(d-1) - 24 sqrt(d) log^5 d) C(2d-2,d); asymptotic, report-only
    bool hypothesis_met = false;  // I in J2 under default thresholds
};

// Nice triplets: (x,y,z) with x,z distinct in B1, y in H1 = N(B1)\B2, or the
// mirror through B2/H2; counted exactly as 2*C(deg,2) per middle vertex.
inline NiceTripletCount nice_triplet_count(const LayerGraph& g, const VertexSet& I,
                                           const MatchingSearchOptions& opt = {}) {
    require(classify_set(view_of(g), I) == SetClass::Maximal, errc::not_maximal,
            "nice triplets are defined for maximal sets");
    InducedMatching M = assign_matching(g, I, opt);
    VertexSet vm = M.vertex_set(std::size_t(g.vertex_count()));
    VertexSet B1 = vm & g.upper_set();
    VertexSet B2 = vm & g.lower_set();
    VertexSet H1 = g.neighborhood(B1);
    H1.and_not(B2);
    VertexSet H2 = g.neighborhood(B2);
    H2.and_not(B1);

    NiceTripletCount out;
    H1.for_each([&](int v) {
        BigInt deg = BigInt(g.neighbors(v).intersection_count(B1));
        out.count += deg * (deg - 1);
    });
    H2.for_each([&](int v) {
        BigInt deg = BigInt(g.neighbors(v).intersection_count(B2));
        out.count += deg * (deg - 1);
    });

    long long d = g.k;
    double logd = std::log2(double(d));
    out.lower_bound = (Rational(2 * d * (d - 1)) -
                       Rational(24 * std::sqrt(double(d)) * std::pow(logd, 5))) *
                      Rational(binomial(2 * d - 2, d));
    auto thr = ClassificationThresholds::defaults(g);
    out.hypothesis_met = Rational(BigInt(M.size())) > thr.j2;
    return out;
}

// Claim: adjacent triplets (x,y,z) with x in B_L^1 ∪ B_L^2 and y,z outside
// V(M(I)) number at least d|B_L^1| - (d/C(2d-2,d-1)) |B_L^1|^2.
inline IsoReport matched_direction_triplet_report(const LayerGraph& g, const VertexSet& I,
                                                  const std::vector<int>& L,
                                                  const MatchingSearchOptions& opt = {}) {
    require(g.n == 2 * g.k - 1, errc::wrong_layer, "stated on B(2d-1,d)");
    require(classify_set(view_of(g), I) == SetClass::Maximal, errc::not_maximal,
            "needs a maximal independent set");
    InducedMatching M = assign_matching(g, I, opt);
    VertexSet vm = M.vertex_set(std::size_t(g.vertex_count()));
    VertexSet BL = g.empty_set();
    for (auto& e : M.edges) {
        int xu = g.is_upper(e.first) ? e.first : e.second;
        int yl = g.is_upper(e.first) ? e.second : e.first;
        int dir = g.edge_direction(xu, yl);
        if (std::find(L.begin(), L.end(), dir) != L.end()) {
            BL.set(std::size_t(xu));
            BL.set(std::size_t(yl));
        }
    }
    VertexSet outside = g.full_set();
    outside.and_not(vm);
    BigInt lhs = 0;
    BL.for_each([&](int x) {
        VertexSet ys = g.neighbors(x) & outside;
        ys.for_each([&](int y) { lhs += BigInt((g.neighbors(y) & outside).count()); });
    });
    Rational b1 = BigInt((BL & g.upper_set()).count());
    long long d = g.k;
    Rational rhs = d * b1 - d * b1 * b1 / Rational(binomial(2 * d - 2, d - 1));
    return IsoReport::make("matched-direction-triplet", Rational(lhs), rhs);
}

struct StabilityProfile {
    BigInt deficient_count = 0;
    Rational threshold = 0;
    double log2_deficient = 0;  // -inf reported as a large negative sentinel
};

// Exact count of MIS whose assigned matching is below (1-eps) m/2; the
// stability constant c is never asserted (unspecified in the source theorem).
inline StabilityProfile stability_profile(GraphView g, const Rational& eps,
                                          const MatchingSearchOptions& mopt = {},
                                          const MisOptions& eopt = {}) {
    require(is_triangle_free(g), errc::not_triangle_free, "stability needs triangle-free input");
    require(eps > 0 && eps < 1, errc::precondition_failed, "eps must lie in (0,1)");
    StabilityProfile out;
    out.threshold = (1 - eps) * Rational(g.n) / 2;
    enumerate_mis(
        g,
        [&](const VertexSet& I) {
            InducedMatching M = assign_matching(g, I, mopt);
            if (Rational(BigInt(M.size())) < out.threshold) ++out.deficient_count;
            return true;
        },
        eopt);
    out.log2_deficient = out.deficient_count == 0
                             ? -1e300
                             : std::log2(double(out.deficient_count.convert_to<double>()));
    return out;
}

}  // namespace midlayer
