#ifndef PERC_TESTUTIL_HPP
#define PERC_TESTUTIL_HPP

#include "perc/graph.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace perc::testutil {

inline Graph makeGraph(int n, std::vector<std::pair<int, int>> edges) {
    return Graph(n, edges);
}

inline Graph pathGraph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < n; ++v) es.emplace_back(v, v + 1);
    return Graph(n, es);
}

inline Graph cycleGraph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < n; ++v) es.emplace_back(v, v + 1);
    es.emplace_back(n, 1);
    return Graph(n, es);
}

inline Graph completeGraph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) es.emplace_back(u, v);
    return Graph(n, es);
}

// triangular prism C3 x K2: triangles 1-2-3 and 4-5-6 plus rungs
inline Graph prismGraph() {
    return makeGraph(6, {{1, 2}, {1, 3}, {2, 3}, {4, 5}, {4, 6}, {5, 6}, {1, 4}, {2, 5}, {3, 6}});
}

// 3-cube; vertex id = bit pattern + 1
inline Graph q3Graph() {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < 8; ++u)
        for (int b = 0; b < 3; ++b) {
            int v = u ^ (1 << b);
            if (u < v) es.emplace_back(u + 1, v + 1);
        }
    return Graph(8, es);
}

// the paper's figure-1 graph: induced path v1..v7 (ids 1..7), every path
// vertex of degree 3; ids 8..16 are the path-external neighbours, 17..21 the
// outer vertices tying them together
inline Graph figure1Graph() {
    return makeGraph(21, {{1, 2},   {2, 3},   {3, 4},   {4, 5},   {5, 6},   {6, 7},
                          {1, 8},   {1, 9},   {2, 10},  {3, 11},  {4, 12},  {5, 13},
                          {6, 14},  {7, 15},  {7, 16},  {17, 12}, {17, 21}, {18, 11},
                          {18, 12}, {19, 15}, {19, 21}, {20, 8},  {20, 16}, {21, 14}});
}

inline std::vector<int> figure1ExternalSeeds() { return {8, 9, 10, 11, 12, 13, 14, 15, 16}; }

// all connected graphs on n labeled vertices (edge-subset enumeration)
inline void forEachConnectedGraph(int n, const std::function<void(const Graph&)>& fn) {
    std::vector<std::pair<int, int>> all;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) all.emplace_back(u, v);
    const uint64_t total = 1ULL << all.size();
    for (uint64_t mask = 0; mask < total; ++mask) {
        std::vector<std::pair<int, int>> es;
        for (size_t i = 0; i < all.size(); ++i)
            if (mask & (1ULL << i)) es.push_back(all[i]);
        Graph g(n, es);
        if (g.connected()) fn(g);
    }
}

// all labeled trees on n vertices via Pruefer sequences
inline void forEachLabeledTree(int n, const std::function<void(const Graph&)>& fn) {
    if (n == 1) {
        fn(Graph(1, {}));
        return;
    }
    if (n == 2) {
        fn(Graph(2, {{1, 2}}));
        return;
    }
    std::vector<int> seq(static_cast<size_t>(n) - 2, 1);
    while (true) {
        std::vector<int> deg(static_cast<size_t>(n) + 1, 1);
        for (int x : seq) ++deg[static_cast<size_t>(x)];
        std::vector<std::pair<int, int>> es;
        std::vector<int> work = seq;
        std::vector<char> used(static_cast<size_t>(n) + 1, 0);
        for (int x : work) {
            int leaf = 0;
            for (int v = 1; v <= n; ++v)
                if (deg[static_cast<size_t>(v)] == 1 && !used[static_cast<size_t>(v)]) {
                    leaf = v;
                    break;
                }
            es.emplace_back(leaf, x);
            used[static_cast<size_t>(leaf)] = 1;
            --deg[static_cast<size_t>(x)];
        }
        std::vector<int> last;
        for (int v = 1; v <= n; ++v)
            if (!used[static_cast<size_t>(v)]) last.push_back(v);
        es.emplace_back(last[0], last[1]);
        fn(Graph(n, es));
        size_t i = 0;
        while (i < seq.size() && seq[i] == n) seq[i++] = 1;
        if (i == seq.size()) break;
        ++seq[i];
    }
}

// all connected graphs on n labeled vertices with every degree exactly 3:
// complete the smallest unsaturated vertex first, so partners always have
// larger ids and each graph is produced exactly once
inline void forEachLabeledCubicGraph(int n, const std::function<void(const Graph&)>& fn) {
    if (n < 4 || n % 2 != 0) return;
    std::vector<int> deg(static_cast<size_t>(n) + 1, 0);
    std::vector<std::vector<char>> adj(static_cast<size_t>(n) + 1,
                                       std::vector<char>(static_cast<size_t>(n) + 1, 0));
    std::vector<std::pair<int, int>> chosen;
    std::function<void()> rec = [&]() {
        int u = 0;
        for (int v = 1; v <= n; ++v)
            if (deg[static_cast<size_t>(v)] < 3) {
                u = v;
                break;
            }
        if (u == 0) {
            Graph g(n, chosen);
            if (g.connected()) fn(g);
            return;
        }
        int need = 3 - deg[static_cast<size_t>(u)];
        std::vector<int> cand;
        for (int v = u + 1; v <= n; ++v)
            if (deg[static_cast<size_t>(v)] < 3 && !adj[static_cast<size_t>(u)][static_cast<size_t>(v)])
                cand.push_back(v);
        if (static_cast<int>(cand.size()) < need) return;
        std::vector<int> idx(static_cast<size_t>(need));
        for (int i = 0; i < need; ++i) idx[static_cast<size_t>(i)] = i;
        while (true) {
            for (int i : idx) {
                int v = cand[static_cast<size_t>(i)];
                adj[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1;
                ++deg[static_cast<size_t>(u)];
                ++deg[static_cast<size_t>(v)];
                chosen.emplace_back(u, v);
            }
            rec();
            for (int i : idx) {
                int v = cand[static_cast<size_t>(i)];
                adj[static_cast<size_t>(u)][static_cast<size_t>(v)] = 0;
                --deg[static_cast<size_t>(u)];
                --deg[static_cast<size_t>(v)];
                chosen.pop_back();
            }
            int i = need - 1;
            while (i >= 0 &&
                   idx[static_cast<size_t>(i)] == static_cast<int>(cand.size()) - need + i)
                --i;
            if (i < 0) break;
            ++idx[static_cast<size_t>(i)];
            for (int j = i + 1; j < need; ++j)
                idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
        }
    };
    rec();
}

} // namespace perc::testutil

#endif
