#pragma once

// Induced matchings as plain edge lists (endpoints stored (min,max), list
// sorted), plus the definitional checker with counterexample reporting.

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "bits.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace midlayer {

struct InducedMatching {
    std::vector<std::pair<int, int>> edges;

    static InducedMatching of(std::vector<std::pair<int, int>> es) {
        for (auto& e : es)
            if (e.first > e.second) std::swap(e.first, e.second);
        std::sort(es.begin(), es.end());
        return InducedMatching{std::move(es)};
    }

    std::size_t size() const { return edges.size(); }

    VertexSet vertex_set(std::size_t nbits) const {
        VertexSet s(nbits);
        for (auto& e : edges) {
            s.set(std::size_t(e.first));
            s.set(std::size_t(e.second));
        }
        return s;
    }
};

struct InducedCheck {
    bool ok = true;
    std::pair<int, int> bad_a{-1, -1};  // the violating edge pair, when !ok
    std::pair<int, int> bad_b{-1, -1};
    std::string detail;
};

// True iff `edges` are pairwise vertex-disjoint graph edges with no cross
// edge between endpoints of distinct pairs. Throws NotAnEdge for non-edges.
inline InducedCheck is_induced_matching(GraphView g, const std::vector<std::pair<int, int>>& edges) {
    for (auto& e : edges)
        require(e.first != e.second && e.first >= 0 && e.second >= 0 && e.first < g.n &&
                    e.second < g.n && g.neighbors(e.first).test(std::size_t(e.second)),
                errc::not_an_edge, "pair is not a graph edge");
    InducedCheck out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            int a = edges[i].first, b = edges[i].second;
            int c = edges[j].first, d = edges[j].second;
            bool disjoint = a != c && a != d && b != c && b != d;
            bool cross = g.neighbors(a).test(std::size_t(c)) || g.neighbors(a).test(std::size_t(d)) ||
                         g.neighbors(b).test(std::size_t(c)) || g.neighbors(b).test(std::size_t(d));
            if (!disjoint || cross) {
                out.ok = false;
                out.bad_a = edges[i];
                out.bad_b = edges[j];
                out.detail = !disjoint ? "edges share a vertex" : "cross edge between matching edges";
                return out;
            }
        }
    }
    return out;
}

}  // namespace midlayer
