#pragma once

// B(n,k): the bipartite graph on two consecutive layers of 2^[n], plus the
// canonical matchings M_k, BFS distances, r-linked components and the
// complementation symmetry. Graphs are immutable after construction.

#include <cstdint>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "numeric.hpp"

namespace midlayer {

// Adjacency rows over global vertex indices; also used for arbitrary small
// graphs (triangle-free audits, random cross-check instances).
struct BitGraph {
    int n = 0;
    std::vector<VertexSet> adj;

    explicit BitGraph(int nv = 0) : n(nv), adj(std::size_t(nv), VertexSet(std::size_t(nv))) {}

    void add_edge(int u, int v) {
        adj[std::size_t(u)].set(std::size_t(v));
        adj[std::size_t(v)].set(std::size_t(u));
    }
    bool has_edge(int u, int v) const { return adj[std::size_t(u)].test(std::size_t(v)); }
    std::size_t degree(int v) const { return adj[std::size_t(v)].count(); }
    std::size_t edge_count() const {
        std::size_t s = 0;
        for (auto& row : adj) s += row.count();
        return s / 2;
    }
};

struct CanonicalMatching {
    int direction = 0;                          // element index in [n]
    std::vector<std::pair<int, int>> edges;     // (upper vertex, lower vertex), sorted by upper
};

class LayerGraph {
public:
    int n = 0;  // ground-set size
    int k = 0;  // upper layer cardinality

    // Vertex order: lower layer first, then upper; within a layer ascending by
    // subset mask. This is the fixed linear order consumed as a tiebreak
    // everywhere (certificates depend on it bit-exactly).
    std::vector<Subset> lower;  // popcount k-1
    std::vector<Subset> upper;  // popcount k
    BitGraph g;

    static LayerGraph build(int n, int k, std::uint64_t vertex_budget = 1'000'000) {
        require(k >= 1 && k <= n && n >= 1 && n <= 63, errc::invalid_layer,
                "need 1 <= k <= n <= 63");
        BigInt nv = binomial(n, k) + binomial(n, k - 1);
        require(nv <= BigInt(vertex_budget), errc::budget_exceeded,
                "vertex count " + nv.str() + " exceeds budget");

        LayerGraph lg;
        lg.n = n;
        lg.k = k;
        // Gosper's hack walks each layer in ascending mask order.
        auto fill_layer = [n](int pc, std::vector<Subset>& out) {
            if (pc == 0) {
                out.push_back(0);
                return;
            }
            Subset limit = (n == 63) ? ~Subset(0) >> 1 : (Subset(1) << n) - 1;
            Subset s = (Subset(1) << pc) - 1;
            while (s <= limit) {
                out.push_back(s);
                Subset c = s & (~s + 1);
                Subset r = s + c;
                if (r > limit || r < s) break;
                s = (((r ^ s) >> 2) / c) | r;
            }
        };
        fill_layer(k - 1, lg.lower);
        fill_layer(k, lg.upper);
        int total = int(lg.lower.size() + lg.upper.size());
        lg.g = BitGraph(total);
        int nl = int(lg.lower.size());
        for (int ui = 0; ui < int(lg.upper.size()); ++ui) {
            Subset x = lg.upper[std::size_t(ui)];
            Subset rest = x;
            while (rest) {
                Subset bit = rest & (~rest + 1);
                rest ^= bit;
                int li = lg.lower_index(x ^ bit);
                lg.g.add_edge(nl + ui, li);
            }
        }
        return lg;
    }

    int lower_count() const { return int(lower.size()); }
    int upper_count() const { return int(upper.size()); }
    int vertex_count() const { return g.n; }
    bool is_upper(int v) const { return v >= lower_count(); }

    Subset subset_of(int v) const {
        return is_upper(v) ? upper[std::size_t(v - lower_count())] : lower[std::size_t(v)];
    }

    int lower_index(Subset s) const {
        auto it = std::lower_bound(lower.begin(), lower.end(), s);
        require(it != lower.end() && *it == s, errc::precondition_failed, "not a lower-layer subset");
        return int(it - lower.begin());
    }
    int upper_index(Subset s) const {
        auto it = std::lower_bound(upper.begin(), upper.end(), s);
        require(it != upper.end() && *it == s, errc::precondition_failed, "not an upper-layer subset");
        return lower_count() + int(it - upper.begin());
    }
    // Dispatch on popcount; throws if the mask is not a vertex of this graph.
    int vertex_of(Subset s) const {
        int pc = popcount64(s);
        if (pc == k) return upper_index(s);
        if (pc == k - 1) return lower_index(s);
        fail(errc::precondition_failed, "subset is not on either layer");
    }

    const VertexSet& neighbors(int v) const { return g.adj[std::size_t(v)]; }
    std::size_t degree(int v) const { return g.degree(v); }
    std::size_t edge_count() const { return g.edge_count(); }

    // Regular degree; only meaningful on self-complementary instances n = 2k-1.
    int regular_degree() const { return k; }
    bool is_regular() const {
        for (int v = 0; v < g.n; ++v)
            if (int(degree(v)) != int(degree(0))) return false;
        return true;
    }

    VertexSet empty_set() const { return VertexSet(std::size_t(g.n)); }
    VertexSet full_set() const { return VertexSet::full(std::size_t(g.n)); }
    VertexSet lower_set() const {
        VertexSet s = empty_set();
        for (int v = 0; v < lower_count(); ++v) s.set(std::size_t(v));
        return s;
    }
    VertexSet upper_set() const {
        VertexSet s = empty_set();
        for (int v = lower_count(); v < g.n; ++v) s.set(std::size_t(v));
        return s;
    }

    VertexSet neighborhood(const VertexSet& A) const {
        VertexSet out = empty_set();
        A.for_each([&](int v) { out |= neighbors(v); });
        return out;
    }

    std::size_t edges_between(const VertexSet& A, const VertexSet& B) const {
        // Counts unordered edges with one end in A and the other in B; an edge
        // inside A∩B is counted once.
        std::size_t total = 0, inside = 0;
        A.for_each([&](int v) { total += neighbors(v).intersection_count(B); });
        VertexSet both = A & B;
        both.for_each([&](int v) { inside += neighbors(v).intersection_count(both); });
        return total - inside / 2;
    }

    // ------------------------------ distances ------------------------------

    // BFS distance, -1 when disconnected (never happens inside one B(n,k)).
    int distance(int u, int v) const {
        if (u == v) return 0;
        std::vector<int> dist(std::size_t(g.n), -1);
        std::queue<int> q;
        dist[std::size_t(u)] = 0;
        q.push(u);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            bool done = false;
            neighbors(x).for_each([&](int y) {
                if (dist[std::size_t(y)] < 0) {
                    dist[std::size_t(y)] = dist[std::size_t(x)] + 1;
                    if (y == v) done = true;
                    q.push(y);
                }
            });
            if (done) return dist[std::size_t(v)];
        }
        return dist[std::size_t(v)];
    }

    // All vertices within distance <= r of v (excluding v itself).
    VertexSet ball(int v, int r) const {
        VertexSet reached = empty_set();
        VertexSet frontier = empty_set();
        frontier.set(std::size_t(v));
        VertexSet seen = frontier;
        for (int step = 0; step < r; ++step) {
            VertexSet next = empty_set();
            frontier.for_each([&](int x) { next |= neighbors(x); });
            next.and_not(seen);
            if (next.none()) break;
            reached |= next;
            seen |= next;
            frontier = next;
        }
        return reached;
    }

    // Maximal subsets of S pairwise connected through hops of distance <= r.
    // Components come back sorted by their smallest vertex.
    std::vector<VertexSet> linked_components(const VertexSet& S, int r) const {
        require(r >= 1, errc::precondition_failed, "linkedness radius must be >= 1");
        std::vector<VertexSet> out;
        VertexSet todo = S;
        while (todo.any()) {
            int seed = todo.lowest();
            VertexSet comp = empty_set();
            comp.set(std::size_t(seed));
            todo.reset(std::size_t(seed));
            VertexSet frontier = comp;
            while (frontier.any()) {
                VertexSet next = empty_set();
                frontier.for_each([&](int x) { next |= ball(x, r); });
                next &= todo;
                if (next.none()) break;
                comp |= next;
                todo.and_not(next);
                frontier = next;
            }
            out.push_back(comp);
        }
        return out;
    }

    bool is_linked(const VertexSet& S, int r) const {
        if (S.none()) return true;
        return linked_components(S, r).size() == 1;
    }

    // --------------------------- canonical matchings ---------------------------

    CanonicalMatching canonical_matching(int direction) const {
        require(direction >= 1 && direction <= n, errc::direction_out_of_range,
                "direction must lie in [n]");
        CanonicalMatching m;
        m.direction = direction;
        Subset bit = Subset(1) << (direction - 1);
        for (int ui = 0; ui < upper_count(); ++ui) {
            Subset x = upper[std::size_t(ui)];
            if (x & bit) m.edges.emplace_back(lower_count() + ui, lower_index(x ^ bit));
        }
        return m;
    }

    // V(M_direction) as a vertex set.
    VertexSet matched_vertices(int direction) const {
        CanonicalMatching m = canonical_matching(direction);
        VertexSet s = empty_set();
        for (auto& e : m.edges) {
            s.set(std::size_t(e.first));
            s.set(std::size_t(e.second));
        }
        return s;
    }

    // Partner map inside V(M_direction): partner[v] = matched mate, -1 outside.
    std::vector<int> matching_partner(int direction) const {
        std::vector<int> p(std::size_t(g.n), -1);
        for (auto& e : canonical_matching(direction).edges) {
            p[std::size_t(e.first)] = e.second;
            p[std::size_t(e.second)] = e.first;
        }
        return p;
    }

    // The edge direction of (upper x, lower y): the unique element of x \ y.
    int edge_direction(int xu, int yl) const {
        Subset diff = subset_of(xu) ^ subset_of(yl);
        require(is_upper(xu) && !is_upper(yl) && popcount64(diff) == 1 &&
                    (subset_of(yl) & diff) == 0,
                errc::not_an_edge, "not an upper-lower containment edge");
        return ctz64(diff) + 1;
    }

    // ------------------------- complementation symmetry -------------------------

    // Involution v -> [n] \ v. Requires n = 2k-1 so complements swap the layers.
    std::vector<int> vertex_complement_map() const {
        require(n == 2 * k - 1, errc::not_self_complementary, "requires n = 2k-1");
        Subset all = (n == 63) ? ~Subset(0) >> 1 : (Subset(1) << n) - 1;
        std::vector<int> perm(std::size_t(g.n));
        for (int v = 0; v < g.n; ++v) perm[std::size_t(v)] = vertex_of(all ^ subset_of(v));
        return perm;
    }
};

// Lightweight view shared by the generic engines (works for both BitGraph and
// LayerGraph without copying).
struct GraphView {
    int n = 0;
    const VertexSet* adj = nullptr;

    const VertexSet& neighbors(int v) const { return adj[std::size_t(v)]; }
};

inline GraphView view_of(const BitGraph& g) { return GraphView{g.n, g.adj.data()}; }
inline GraphView view_of(const LayerGraph& g) { return view_of(g.g); }

}  // namespace midlayer
