#pragma once

// Exact maximal-independent-set machinery: classification, enumeration and
// counting (in/out branching with maximality pruning), an independent
// cross-check counter (pivoting maximal-clique enumeration on the complement),
// deterministic greedy completion, and the Hujter-Tuza audit.
//
// The branching engine is templated on the bitset representation: fixed-width
// word arrays up to 256 vertices (covers every enumerable instance), with a
// heap-backed fallback for larger graphs.

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "numeric.hpp"

namespace midlayer {

enum class SetClass { NotIndependent, IndependentNotMaximal, Maximal };

// Classification inside the subgraph induced by `mask` (default: whole graph).
inline SetClass classify_set(GraphView g, const VertexSet& S, const VertexSet* mask = nullptr) {
    VertexSet m = mask ? *mask : VertexSet::full(std::size_t(g.n));
    require(S.subset_of(m), errc::precondition_failed, "set leaves the induced subgraph");
    bool independent = true;
    S.for_each([&](int v) {
        if (g.neighbors(v).intersects(S)) independent = false;
    });
    if (!independent) return SetClass::NotIndependent;
    VertexSet outside = m;
    outside.and_not(S);
    bool maximal = true;
    outside.for_each([&](int v) {
        if (!g.neighbors(v).intersects(S)) maximal = false;
    });
    return maximal ? SetClass::Maximal : SetClass::IndependentNotMaximal;
}

struct EnumerationStats {
    BigInt total = 0;
    std::map<int, BigInt> by_size;
    double elapsed_ms = 0;
    int workers = 1;
    bool aborted = false;  // node budget hit; totals cover completed subtrees only
};

struct MisOptions {
    int workers = 1;
    std::uint64_t node_budget = UINT64_MAX;
    const VertexSet* mask = nullptr;
};

namespace detail {

template <int W>
struct FixedBits {
    std::array<std::uint64_t, W> w{};

    static FixedBits zero_like(const FixedBits&) { return FixedBits{}; }
    bool test(int i) const { return (w[std::size_t(i >> 6)] >> (i & 63)) & 1u; }
    void set(int i) { w[std::size_t(i >> 6)] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w[std::size_t(i >> 6)] &= ~(std::uint64_t(1) << (i & 63)); }
    void operator|=(const FixedBits& o) {
        for (int i = 0; i < W; ++i) w[std::size_t(i)] |= o.w[std::size_t(i)];
    }
    void operator&=(const FixedBits& o) {
        for (int i = 0; i < W; ++i) w[std::size_t(i)] &= o.w[std::size_t(i)];
    }
    void and_not(const FixedBits& o) {
        for (int i = 0; i < W; ++i) w[std::size_t(i)] &= ~o.w[std::size_t(i)];
    }
    bool none() const {
        for (int i = 0; i < W; ++i)
            if (w[std::size_t(i)]) return false;
        return true;
    }
    bool intersects(const FixedBits& o) const {
        for (int i = 0; i < W; ++i)
            if (w[std::size_t(i)] & o.w[std::size_t(i)]) return true;
        return false;
    }
    int lowest() const {
        for (int i = 0; i < W; ++i)
            if (w[std::size_t(i)]) return i * 64 + ctz64(w[std::size_t(i)]);
        return -1;
    }
    int count() const {
        int c = 0;
        for (int i = 0; i < W; ++i) c += popcount64(w[std::size_t(i)]);
        return c;
    }
    int intersection_count(const FixedBits& o) const {
        int c = 0;
        for (int i = 0; i < W; ++i) c += popcount64(w[std::size_t(i)] & o.w[std::size_t(i)]);
        return c;
    }
};

struct DynBits {
    std::vector<std::uint64_t> w;

    static DynBits zero_like(const DynBits& o) { return DynBits{std::vector<std::uint64_t>(o.w.size(), 0)}; }
    bool test(int i) const { return (w[std::size_t(i >> 6)] >> (i & 63)) & 1u; }
    void set(int i) { w[std::size_t(i >> 6)] |= std::uint64_t(1) << (i & 63); }
    void reset(int i) { w[std::size_t(i >> 6)] &= ~(std::uint64_t(1) << (i & 63)); }
    void operator|=(const DynBits& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
    }
    void operator&=(const DynBits& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    }
    void and_not(const DynBits& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
    }
    bool none() const {
        for (auto x : w)
            if (x) return false;
        return true;
    }
    bool intersects(const DynBits& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & o.w[i]) return true;
        return false;
    }
    int lowest() const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) return int(i) * 64 + ctz64(w[i]);
        return -1;
    }
    int count() const {
        int c = 0;
        for (auto x : w) c += popcount64(x);
        return c;
    }
    int intersection_count(const DynBits& o) const {
        int c = 0;
        for (std::size_t i = 0; i < w.size(); ++i) c += popcount64(w[i] & o.w[i]);
        return c;
    }
};

template <class BS>
BS to_bs(const VertexSet& s, const BS& zero) {
    BS out = BS::zero_like(zero);
    s.for_each([&](int v) { out.set(v); });
    return out;
}

template <class BS>
VertexSet to_vertex_set(const BS& s, int n) {
    VertexSet out{std::size_t(n)};
    for (int v = 0; v < n; ++v)
        if (s.test(v)) out.set(std::size_t(v));
    return out;
}

template <class BS>
struct MisEngine {
    int n = 0;
    std::vector<BS> adj;
    BS zero;
    std::atomic<std::uint64_t>* nodes = nullptr;
    std::uint64_t node_budget = UINT64_MAX;
    std::atomic<bool>* stop = nullptr;

    struct Node {
        BS U, P, S;
    };

    struct SubResult {
        unsigned __int128 count = 0;
        std::vector<std::uint64_t> by_size;  // indexed by |S|
        std::vector<VertexSet> sets;         // populated only when collecting
        bool collect = false;
        bool sink_ok = true;
        const std::function<bool(const VertexSet&)>* sink = nullptr;
    };

    // p is pending iff excluded and not yet dominated; it must keep at least
    // one undecided neighbor or the branch is dead.
    bool pending_alive(const BS& candidates, const BS& U) const {
        BS c = candidates;
        int v;
        while ((v = c.lowest()) >= 0) {
            c.reset(v);
            if (!adj[std::size_t(v)].intersects(U)) return false;
        }
        return true;
    }

    void leaf(const BS& S, SubResult& r) {
        ++r.count;
        int sz = S.count();
        if (int(r.by_size.size()) <= sz) r.by_size.resize(std::size_t(sz) + 1, 0);
        ++r.by_size[std::size_t(sz)];
        if (r.collect) r.sets.push_back(to_vertex_set(S, n));
        else if (r.sink && !(*r.sink)(to_vertex_set(S, n))) {
            r.sink_ok = false;
            stop->store(true, std::memory_order_relaxed);
        }
    }

    // Splits a node into its ordered children (include branch first); returns
    // false when the node is a leaf (children untouched).
    bool split(const Node& nd, Node out[2], int& nout) {
        nout = 0;
        int v = nd.U.lowest();
        if (v < 0) return false;
        const BS& nv = adj[std::size_t(v)];

        // v taken into I: neighbors leave U dominated, pendings beside v settle.
        {
            Node c;
            c.U = nd.U;
            c.U.and_not(nv);
            c.U.reset(v);
            c.P = nd.P;
            c.P.and_not(nv);
            c.S = nd.S;
            c.S.set(v);
            BS removed = nd.U;
            removed.and_not(c.U);
            BS affected = zero;
            int u;
            BS rem = removed;
            while ((u = rem.lowest()) >= 0) {
                rem.reset(u);
                affected |= adj[std::size_t(u)];
            }
            affected &= c.P;
            if (pending_alive(affected, c.U)) out[nout++] = c;
        }
        // v excluded: it must retain a potential dominating neighbor.
        {
            Node c;
            c.U = nd.U;
            c.U.reset(v);
            c.P = nd.P;
            c.S = nd.S;
            bool ok = true;
            if (!nv.intersects(nd.S)) {
                if (!nv.intersects(c.U)) ok = false;
                else c.P.set(v);
            }
            if (ok) {
                BS affected = nv;
                affected &= c.P;
                ok = pending_alive(affected, c.U);
            }
            if (ok) out[nout++] = c;
        }
        return true;
    }

    void dfs(Node nd, SubResult& r) {
        for (;;) {
            if (stop->load(std::memory_order_relaxed)) return;
            if (nodes->fetch_add(1, std::memory_order_relaxed) + 1 > node_budget) {
                stop->store(true, std::memory_order_relaxed);
                return;
            }
            Node child[2];
            int nc = 0;
            if (!split(nd, child, nc)) {
                leaf(nd.S, r);
                return;
            }
            if (nc == 0) return;
            if (nc == 2) {
                dfs(child[0], r);
                nd = child[1];
            } else {
                nd = child[0];
            }
        }
    }
};

// Bron-Kerbosch with pivoting on the complement graph: maximal cliques there
// are exactly the maximal independent sets here. Shares no logic with the
// branching enumerator above.
template <class BS>
struct CliqueOracle {
    int n = 0;
    std::vector<BS> cadj;
    std::atomic<std::uint64_t>* nodes = nullptr;
    std::uint64_t node_budget = UINT64_MAX;
    unsigned __int128 count = 0;

    void run(BS P, BS X) {
        if (nodes->fetch_add(1, std::memory_order_relaxed) + 1 > node_budget)
            fail(errc::budget_exceeded, "clique-oracle node budget exhausted");
        if (P.none() && X.none()) {
            ++count;
            return;
        }
        // Tomita pivot: maximize |P ∩ N(u)| over u in P ∪ X.
        int pivot = -1, best = -1;
        BS PX = P;
        PX |= X;
        BS it = PX;
        int u;
        while ((u = it.lowest()) >= 0) {
            it.reset(u);
            int c = P.intersection_count(cadj[std::size_t(u)]);
            if (c > best) {
                best = c;
                pivot = u;
            }
        }
        BS ext = P;
        ext.and_not(cadj[std::size_t(pivot)]);
        int v;
        while ((v = ext.lowest()) >= 0) {
            ext.reset(v);
            BS P2 = P;
            P2 &= cadj[std::size_t(v)];
            BS X2 = X;
            X2 &= cadj[std::size_t(v)];
            run(P2, X2);
            P.reset(v);
            X.set(v);
        }
    }
};

template <class BS>
EnumerationStats enumerate_with(GraphView g, const std::function<bool(const VertexSet&)>* sink,
                                const MisOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    int n = g.n;
    MisEngine<BS> eng;
    eng.n = n;
    {
        BS z{};
        if constexpr (std::is_same_v<BS, DynBits>) z.w.assign(std::size_t((std::max(n, 1) + 63) / 64), 0);
        eng.zero = z;
    }
    eng.adj.reserve(std::size_t(n));
    VertexSet mask = opt.mask ? *opt.mask : VertexSet::full(std::size_t(n));
    BS mask_bs = to_bs<BS>(mask, eng.zero);
    for (int v = 0; v < n; ++v) {
        VertexSet row = g.neighbors(v) & mask;
        eng.adj.push_back(to_bs<BS>(row, eng.zero));
    }

    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    eng.nodes = &nodes;
    eng.node_budget = opt.node_budget;
    eng.stop = &stop;

    using Node = typename MisEngine<BS>::Node;
    using SubResult = typename MisEngine<BS>::SubResult;

    std::vector<Node> frontier;
    frontier.push_back(Node{mask_bs, eng.zero, eng.zero});
    int workers = std::max(1, opt.workers);
    // Ordered frontier expansion: children replace their parent in place, so
    // concatenating subtree outputs in frontier order reproduces DFS order.
    if (workers > 1) {
        std::size_t target = std::size_t(workers) * 8;
        bool grew = true;
        int rounds = 0;
        while (frontier.size() < target && grew && rounds++ < 4 * n) {
            grew = false;
            std::vector<Node> next;
            next.reserve(frontier.size() * 2);
            for (auto& nd : frontier) {
                Node child[2];
                int nc = 0;
                if (!eng.split(nd, child, nc)) {
                    next.push_back(nd);  // leaf; keep in place
                } else {
                    grew = grew || nc > 0;
                    for (int i = 0; i < nc; ++i) next.push_back(child[i]);
                }
            }
            frontier = std::move(next);
        }
    }

    std::vector<SubResult> results(frontier.size());
    bool streaming = sink != nullptr;

    auto run_node = [&](std::size_t i) {
        SubResult& r = results[i];
        r.collect = streaming && workers > 1;
        r.sink = (streaming && workers == 1) ? sink : nullptr;
        Node nd = frontier[i];
        if (nd.U.none()) {
            // Frontier leaves are complete solutions already.
            eng.leaf(nd.S, r);
        } else {
            eng.dfs(nd, r);
        }
    };

    if (workers <= 1) {
        for (std::size_t i = 0; i < frontier.size() && !stop.load(); ++i) run_node(i);
    } else {
        // Batches of `workers` nodes keep streaming memory bounded and the
        // emission order deterministic.
        for (std::size_t base = 0; base < frontier.size() && !stop.load(); base += std::size_t(workers)) {
            std::size_t hi = std::min(frontier.size(), base + std::size_t(workers));
            std::vector<std::thread> pool;
            for (std::size_t i = base; i < hi; ++i) pool.emplace_back(run_node, i);
            for (auto& t : pool) t.join();
            if (streaming) {
                for (std::size_t i = base; i < hi && !stop.load(); ++i) {
                    for (auto& s : results[i].sets) {
                        if (!(*sink)(s)) {
                            stop.store(true);
                            results[i].sink_ok = false;
                            break;
                        }
                    }
                    results[i].sets.clear();
                }
            }
        }
    }

    EnumerationStats stats;
    stats.workers = workers;
    bool sink_aborted = false;
    for (auto& r : results) {
        stats.total += BigInt(std::uint64_t(r.count >> 64)) * (BigInt(1) << 64) +
                       BigInt(std::uint64_t(r.count));
        for (std::size_t s = 0; s < r.by_size.size(); ++s)
            if (r.by_size[s]) stats.by_size[int(s)] += r.by_size[s];
        if (!r.sink_ok) sink_aborted = true;
    }
    stats.aborted = stop.load() && !sink_aborted;
    stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    // Budget aborts return flagged partial totals; consumer cancellation throws.
    if (sink_aborted) fail(errc::sink_aborted, "consumer cancelled enumeration");
    return stats;
}

template <class BS>
BigInt count_oracle_with(GraphView g, const MisOptions& opt) {
    int n = g.n;
    CliqueOracle<BS> bk;
    bk.n = n;
    BS zero{};
    if constexpr (std::is_same_v<BS, DynBits>) zero.w.assign(std::size_t((n + 63) / 64), 0);
    VertexSet mask = opt.mask ? *opt.mask : VertexSet::full(std::size_t(n));
    BS mask_bs = to_bs<BS>(mask, zero);
    bk.cadj.reserve(std::size_t(n));
    for (int v = 0; v < n; ++v) {
        BS row = mask_bs;
        if (!mask.test(std::size_t(v))) row = zero;
        else {
            BS nv = to_bs<BS>(g.neighbors(v), zero);
            row.and_not(nv);
            row.reset(v);
        }
        bk.cadj.push_back(row);
    }
    std::atomic<std::uint64_t> nodes{0};
    bk.nodes = &nodes;
    bk.node_budget = opt.node_budget;
    bk.run(mask_bs, zero);
    return BigInt(std::uint64_t(bk.count >> 64)) * (BigInt(1) << 64) +
           BigInt(std::uint64_t(bk.count));
}

template <class Fn>
auto dispatch_bits(int n, Fn&& fn) {
    int words = (std::max(n, 1) + 63) / 64;
    switch (words) {
        case 1: return fn(FixedBits<1>{});
        case 2: return fn(FixedBits<2>{});
        case 3: return fn(FixedBits<3>{});
        case 4: return fn(FixedBits<4>{});
        default: return fn(DynBits{});
    }
}

}  // namespace detail

// Streams every maximal independent set exactly once (deterministic DFS order
// for any worker count); the sink may cancel by returning false.
inline EnumerationStats enumerate_mis(GraphView g, const std::function<bool(const VertexSet&)>& sink,
                                      const MisOptions& opt = {}) {
    return detail::dispatch_bits(g.n, [&](auto tag) {
        using BS = decltype(tag);
        return detail::enumerate_with<BS>(g, &sink, opt);
    });
}

inline EnumerationStats count_mis_stats(GraphView g, const MisOptions& opt = {}) {
    return detail::dispatch_bits(g.n, [&](auto tag) {
        using BS = decltype(tag);
        return detail::enumerate_with<BS>(g, nullptr, opt);
    });
}

inline BigInt count_mis(GraphView g, const MisOptions& opt = {}) {
    EnumerationStats s = count_mis_stats(g, opt);
    require(!s.aborted, errc::budget_exceeded, "enumeration node budget exhausted");
    return s.total;
}

// Independent algorithm: pivoting maximal-clique count on the complement.
inline BigInt count_mis_oracle(GraphView g, const MisOptions& opt = {}) {
    require(g.n <= 10'000, errc::budget_exceeded, "oracle vertex budget is 10^4");
    return detail::dispatch_bits(g.n, [&](auto tag) {
        using BS = decltype(tag);
        return detail::count_oracle_with<BS>(g, opt);
    });
}

// Deterministic greedy completion in global vertex order.
inline VertexSet complete_to_mis(GraphView g, const VertexSet& S, const VertexSet* mask = nullptr) {
    require(classify_set(g, S, mask) != SetClass::NotIndependent, errc::not_independent,
            "seed set must be independent");
    VertexSet m = mask ? *mask : VertexSet::full(std::size_t(g.n));
    VertexSet R = S;
    for (int v = 0; v < g.n; ++v) {
        if (!m.test(std::size_t(v)) || R.test(std::size_t(v))) continue;
        if (!g.neighbors(v).intersects(R)) R.set(std::size_t(v));
    }
    return R;
}

inline bool is_triangle_free(GraphView g) {
    for (int u = 0; u < g.n; ++u) {
        bool bad = false;
        g.neighbors(u).for_each([&](int v) {
            if (v > u && g.neighbors(u).intersects(g.neighbors(v))) bad = true;
        });
        if (bad) return false;
    }
    return true;
}

struct HujterTuzaAudit {
    BigInt count = 0;
    int m = 0;
    bool bound_holds = false;        // count <= 2^{m/2}, decided as count^2 <= 2^m
    bool equality = false;           // count = 2^{m/2}
    bool is_perfect_matching = false;
};

inline HujterTuzaAudit hujter_tuza_audit(GraphView g, const MisOptions& opt = {}) {
    require(is_triangle_free(g), errc::not_triangle_free, "graph contains a triangle");
    HujterTuzaAudit out;
    out.m = g.n;
    out.count = count_mis(g, opt);
    BigInt sq = out.count * out.count;
    BigInt pow2m = BigInt(1) << unsigned(g.n);
    out.bound_holds = sq <= pow2m;
    out.equality = sq == pow2m;
    out.is_perfect_matching = true;
    for (int v = 0; v < g.n; ++v)
        if (g.neighbors(v).count() != 1) out.is_perfect_matching = false;
    return out;
}

// Labeled triangle-free graphs on m vertices, generated by choosing each new
// vertex's neighborhood among independent sets of the current graph (exactly
// the triangle-free extensions).
template <class Fn>
void for_each_triangle_free(int m, Fn&& fn) {
    require(m >= 1 && m <= 30, errc::budget_exceeded, "triangle-free sweep supports m <= 30");
    std::vector<std::uint32_t> adj(std::size_t(m), 0);
    auto independent = [&](std::uint32_t s) {
        std::uint32_t t = s;
        while (t) {
            int b = ctz64(t);
            t &= t - 1;
            if (adj[std::size_t(b)] & s) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int i) -> void {
        if (i == m) {
            fn(const_cast<const std::vector<std::uint32_t>&>(adj));
            return;
        }
        std::uint32_t space = (i >= 31) ? ~0u : ((1u << i) - 1);
        for (std::uint32_t nb = 0;; nb = (nb - space) & space) {
            // iterate all subsets of space including 0
            if (independent(nb)) {
                adj[std::size_t(i)] = nb;
                std::uint32_t t = nb;
                while (t) {
                    int b = ctz64(t);
                    t &= t - 1;
                    adj[std::size_t(b)] |= 1u << i;
                }
                self(self, i + 1);
                t = nb;
                while (t) {
                    int b = ctz64(t);
                    t &= t - 1;
                    adj[std::size_t(b)] &= ~(1u << i);
                }
                adj[std::size_t(i)] = 0;
            }
            if (nb == space) break;
        }
    };
    rec(rec, 0);
}

// Tight MIS counter for mask graphs on <= 30 vertices (the audit workhorse).
inline std::uint64_t count_mis_small(const std::vector<std::uint32_t>& adj) {
    int m = int(adj.size());
    std::uint32_t full = (m >= 31) ? ~0u : ((1u << m) - 1);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, std::uint32_t U, std::uint32_t P, std::uint32_t S) -> void {
        if (!U) {
            if (!P) ++total;
            return;
        }
        int v = ctz64(U);
        std::uint32_t nv = adj[std::size_t(v)];
        // include v
        {
            std::uint32_t U1 = U & ~nv & ~(1u << v);
            std::uint32_t P1 = P & ~nv;
            bool ok = true;
            std::uint32_t affected = 0;
            std::uint32_t removed = U & ~U1;
            std::uint32_t t = removed;
            while (t) {
                int b = ctz64(t);
                t &= t - 1;
                affected |= adj[std::size_t(b)];
            }
            t = affected & P1;
            while (t && ok) {
                int b = ctz64(t);
                t &= t - 1;
                if (!(adj[std::size_t(b)] & U1)) ok = false;
            }
            if (ok) self(self, U1, P1, S | (1u << v));
        }
        // exclude v
        {
            std::uint32_t U2 = U & ~(1u << v);
            std::uint32_t P2 = P;
            bool ok = true;
            if (!(nv & S)) {
                if (!(nv & U2)) ok = false;
                else P2 |= 1u << v;
            }
            std::uint32_t t = nv & P2;
            while (t && ok) {
                int b = ctz64(t);
                t &= t - 1;
                if (!(adj[std::size_t(b)] & U2)) ok = false;
            }
            if (ok) self(self, U2, P2, S);
        }
    };
    rec(rec, full, 0, 0);
    return total;
}

}  // namespace midlayer
