#pragma once

// Report-producing checkers for the vertex/edge isoperimetry inequalities and
// the degree-square identities on B(n,d). Checkers compute both sides exactly
// (rationals) and report slack; asymptotic variants are never asserted here.

#include <cmath>
#include <optional>

#include "graph.hpp"
#include "matching_types.hpp"
#include "report.hpp"

namespace midlayer {

enum class IsoVariant {
    vertex_i,        // |N(A)| >= d|A| - |A|^2/2            (|A| <= d)
    vertex_ii,       // |N(A)| >= d|A|/9                    (|A| <= d^6, large d only)
    vertex_iii,      // |N(A)| >= (1 + 1/(d-1))|A|          (|A| <= C(2d-2,d))
    iso3,            // on B(2d-2,d-1): |N(A)| >= (1 + log d/(5d))|A|   (large d only)
    matched_shadow,  // A = V(M) ∩ L_d: |N(A)| >= (2 + log d/(5d))|A|   (large d only)
    doublesided,     // A ⊆ V(M_k)^c: |tilde(N(A))| >= 2d|A| - 4|A|^2
};

inline const char* iso_variant_name(IsoVariant v) {
    switch (v) {
        case IsoVariant::vertex_i: return "vertex-i";
        case IsoVariant::vertex_ii: return "vertex-ii";
        case IsoVariant::vertex_iii: return "vertex-iii";
        case IsoVariant::iso3: return "iso3";
        case IsoVariant::matched_shadow: return "matched-shadow";
        case IsoVariant::doublesided: return "doublesided";
    }
    return "?";
}

struct VertexIsoOptions {
    const InducedMatching* matching = nullptr;  // matched_shadow only
    std::optional<int> direction;               // doublesided only; defaults to n
};

// Tilde closure of D inside V(M_direction): a matched pair enters whenever D
// touches either of its endpoints.
inline VertexSet tilde_closure(const LayerGraph& g, int direction, const VertexSet& D) {
    VertexSet out = g.empty_set();
    for (auto& e : g.canonical_matching(direction).edges) {
        if (D.test(std::size_t(e.first)) || D.test(std::size_t(e.second))) {
            out.set(std::size_t(e.first));
            out.set(std::size_t(e.second));
        }
    }
    return out;
}

inline IsoReport vertex_iso_report(const LayerGraph& g, const VertexSet& A, IsoVariant variant,
                                   const VertexIsoOptions& opts = {}) {
    const long long d = (variant == IsoVariant::iso3) ? g.k + 1 : g.k;
    const Rational a = BigInt(A.count());
    const double logd = std::log2(double(d));

    switch (variant) {
        case IsoVariant::vertex_i:
        case IsoVariant::vertex_ii:
        case IsoVariant::vertex_iii: {
            require(A.subset_of(g.upper_set()), errc::wrong_layer, "A must lie in the upper layer");
            Rational lhs = BigInt(g.neighborhood(A).count());
            if (variant == IsoVariant::vertex_i)
                return IsoReport::make("vertex-i", lhs, d * a - a * a / 2, a <= d);
            if (variant == IsoVariant::vertex_ii)
                return IsoReport::make("vertex-ii", lhs, Rational(d) * a / 9,
                                       a <= bigint_pow(BigInt(d), 6));
            require(d >= 2, errc::precondition_failed, "variant (iii) needs d >= 2");
            return IsoReport::make("vertex-iii", lhs, a * Rational(d, d - 1),
                                   a <= binomial(2 * d - 2, d));
        }
        case IsoVariant::iso3: {
            require(g.n == 2 * g.k, errc::wrong_layer, "iso3 runs on B(2d-2,d-1), i.e. n = 2k");
            require(A.subset_of(g.upper_set()), errc::wrong_layer, "A must lie in the upper layer");
            Rational lhs = BigInt(g.neighborhood(A).count());
            Rational factor = 1 + Rational(logd) / (5 * d);
            bool hyp = a <= Rational(std::pow(logd, 6) / std::sqrt(double(d))) *
                                Rational(binomial(g.n, g.k));
            return IsoReport::make("iso3", lhs, a * factor, hyp);
        }
        case IsoVariant::matched_shadow: {
            require(g.n == 2 * g.k - 1, errc::wrong_layer, "matched-shadow needs B(2d-1,d)");
            require(opts.matching != nullptr, errc::not_induced_matching,
                    "matched-shadow needs the matching");
            auto chk = is_induced_matching(view_of(g), opts.matching->edges);
            require(chk.ok, errc::not_induced_matching, chk.detail);
            VertexSet B = opts.matching->vertex_set(std::size_t(g.vertex_count())) & g.upper_set();
            require(B == A, errc::not_induced_matching,
                    "A must be exactly the upper endpoints of the matching");
            Rational lhs = BigInt(g.neighborhood(A).count());
            Rational factor = 2 + Rational(logd) / (5 * d);
            bool hyp = Rational(BigInt(opts.matching->edges.size())) <=
                       Rational(std::pow(logd, 6) / std::sqrt(double(d))) *
                           Rational(binomial(2 * d - 2, d - 1));
            return IsoReport::make("matched-shadow", lhs, a * factor, hyp);
        }
        case IsoVariant::doublesided: {
            require(g.n == 2 * g.k - 1, errc::wrong_layer, "doublesided needs B(2d-1,d)");
            int dir = opts.direction.value_or(g.n);
            VertexSet matched = g.matched_vertices(dir);
            VertexSet outside = g.full_set();
            outside.and_not(matched);
            require(A.subset_of(outside), errc::wrong_layer, "A must avoid V(M_k)");
            Rational lhs = BigInt(tilde_closure(g, dir, g.neighborhood(A)).count());
            return IsoReport::make("doublesided", lhs, 2 * d * a - 4 * a * a, true);
        }
    }
    fail(errc::precondition_failed, "unknown variant");
}

// d_A(v) for every lower vertex v, as a vector indexed by vertex.
inline std::vector<int> lower_degrees_into(const LayerGraph& g, const VertexSet& A) {
    std::vector<int> deg(std::size_t(g.vertex_count()), 0);
    for (int v = 0; v < g.lower_count(); ++v)
        deg[std::size_t(v)] = int(g.neighbors(v).intersection_count(A));
    return deg;
}

// |B(A)|: ordered adjacent triplets (x,y,z) with x in A, z outside A (both upper).
inline BigInt adjacent_triplet_count(const LayerGraph& g, const VertexSet& A) {
    BigInt total = 0;
    int up_deg = g.n - g.k + 1;  // every lower vertex has n-k+1 upper neighbors
    auto deg = lower_degrees_into(g, A);
    for (int v = 0; v < g.lower_count(); ++v)
        total += BigInt(deg[std::size_t(v)]) * (up_deg - deg[std::size_t(v)]);
    return total;
}

// |B(A)| >= n|A| - d|A|^2 / C(n-1,d-1), non-asymptotic. slack >= 0 expected.
inline IsoReport adjacent_triplet_report(const LayerGraph& g, const VertexSet& A) {
    require(A.subset_of(g.upper_set()), errc::wrong_layer, "A must lie in the upper layer");
    long long d = g.k;
    Rational a = BigInt(A.count());
    Rational lhs = adjacent_triplet_count(g, A);
    Rational rhs = g.n * a - d * a * a / Rational(binomial(g.n - 1, d - 1));
    return IsoReport::make("adjacent-triplet", lhs, rhs);
}

// Exact identity: sum_v d_A(v)^2 = (n-d+1) d |A| - |B(A)|.
struct TripletIdentity {
    BigInt lhs = 0;
    BigInt rhs = 0;
    bool equal() const { return lhs == rhs; }
};

inline TripletIdentity triplet_identity_check(const LayerGraph& g, const VertexSet& A) {
    require(A.subset_of(g.upper_set()), errc::wrong_layer, "A must lie in the upper layer");
    TripletIdentity out;
    auto deg = lower_degrees_into(g, A);
    for (int v = 0; v < g.lower_count(); ++v)
        out.lhs += BigInt(deg[std::size_t(v)]) * deg[std::size_t(v)];
    long long d = g.k;
    out.rhs = BigInt(g.n - d + 1) * d * BigInt(A.count()) - adjacent_triplet_count(g, A);
    return out;
}

// Bey: sum_v d_A(v)^2 <= (d / C(n-1,d-1)) |A|^2 + (n-d)(d-1)|A|. slack <= 0 expected.
inline IsoReport bey_bound_report(const LayerGraph& g, const VertexSet& A) {
    require(A.subset_of(g.upper_set()), errc::wrong_layer, "A must lie in the upper layer");
    long long d = g.k;
    Rational a = BigInt(A.count());
    Rational lhs = triplet_identity_check(g, A).lhs;
    Rational rhs = d * a * a / Rational(binomial(g.n - 1, d - 1)) + Rational(g.n - d) * (d - 1) * a;
    return IsoReport::make("bey", lhs, rhs);
}

// Edge isoperimetry through an induced matching:
//   e(H, L_d \ A) >= (d/(n-d)) (|A| - |A|^2 / C(n-1,d-1)),
// with A' = N(A) ∩ V(M) and H = N(A) \ A'. Hypothesis (checked, error carries
// the witness): every x in A \ V(M) has no neighbors in V(M).
inline IsoReport edge_iso_report(const LayerGraph& g, const VertexSet& A, const InducedMatching& M) {
    require(A.subset_of(g.upper_set()), errc::wrong_layer, "A must lie in the upper layer");
    require(g.n > g.k, errc::precondition_failed, "needs n > d");
    auto chk = is_induced_matching(view_of(g), M.edges);
    require(chk.ok, errc::not_induced_matching, chk.detail);

    VertexSet vm = M.vertex_set(std::size_t(g.vertex_count()));
    VertexSet unmatched_a = A;
    unmatched_a.and_not(vm);
    int witness = -1;
    unmatched_a.for_each([&](int x) {
        if (witness < 0 && g.neighbors(x).intersects(vm)) witness = x;
    });
    require(witness < 0, errc::hypothesis_violated,
            "vertex in A \\ V(M) has a neighbor in V(M)", witness);

    VertexSet na = g.neighborhood(A);
    VertexSet aprime = na & vm;
    VertexSet H = na;
    H.and_not(aprime);
    VertexSet outsideA = g.upper_set();
    outsideA.and_not(A);
    Rational lhs = BigInt(g.edges_between(H, outsideA));
    long long d = g.k;
    Rational a = BigInt(A.count());
    Rational rhs = Rational(d, g.n - d) * (a - a * a / Rational(binomial(g.n - 1, d - 1)));
    return IsoReport::make("edge-iso", lhs, rhs);
}

}  // namespace midlayer
