#include "perc/solidgrid.hpp"
#include "perc/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace perc {

std::vector<int> Ladder::vertices() const {
    std::vector<int> vs;
    for (const auto& col : columns) {
        vs.push_back(col[0]);
        vs.push_back(col[1]);
    }
    std::sort(vs.begin(), vs.end());
    return vs;
}

std::vector<int> Ladder::internalVertices() const {
    std::vector<int> vs = vertices();
    std::vector<int> ex(ext.begin(), ext.end());
    std::sort(ex.begin(), ex.end());
    std::vector<int> out;
    std::set_difference(vs.begin(), vs.end(), ex.begin(), ex.end(), std::back_inserter(out));
    return out;
}

std::vector<int> WeightedGraph::vertices() const {
    std::vector<int> vs;
    for (int v = 1; v <= n; ++v)
        if (present[static_cast<size_t>(v)]) vs.push_back(v);
    return vs;
}

void WeightedGraph::addEdge(int u, int v, int w, const LadderEdgeInfo& info) {
    if (w < 1) fail(Errc::BadInput, "weighted edge must have positive weight");
    if (adjacent(u, v)) fail(Errc::BadInput, "duplicate weighted edge");
    adj[static_cast<size_t>(u)].push_back({v, w, info});
    adj[static_cast<size_t>(v)].push_back({u, w, info});
}

bool WeightedGraph::adjacent(int u, int v) const {
    for (const Edge& e : adj[static_cast<size_t>(u)])
        if (e.to == v) return true;
    return false;
}

int WeightedGraph::weightOf(int u, int v) const {
    for (const Edge& e : adj[static_cast<size_t>(u)])
        if (e.to == v) return e.weight;
    fail(Errc::BadInput, "no such weighted edge");
}

namespace {

int floorDiv(int a, int b) {
    int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

int ladderFormulaValue(int k, LadderCase c, int t) {
    if (k < 2 || t < 0 || t > 2) fail(Errc::InvalidCase, "ladder formula: bad k or t");
    switch (c) {
    case LadderCase::Adjacent:
        return 1;
    case LadderCase::LongSide:
        if (k < 3) fail(Errc::InvalidCase, "long-side extremity pairs need k >= 3");
        return (k - t) + 2 * floorDiv(k - t + 1, 4) - 1 + t;
    case LadderCase::Diagonal:
        return (k - t) + 2 * floorDiv(k - t - 1, 4) + t;
    }
    fail(Errc::InvalidCase, "bad ladder case");
}

namespace {

// Longest induced u-v path in a 2 x k grid whose interior vertices avoid the
// extremities marked degree-2; 0 when no such path exists.
struct LadderEnum {
    const Graph& g;
    int target;
    std::vector<char> blockedInterior;
    std::vector<char> onPath;
    std::vector<int> adjCount;
    int best = -1;

    LadderEnum(const Graph& gr, int tgt)
        : g(gr),
          target(tgt),
          blockedInterior(static_cast<size_t>(gr.vertexCount()) + 1, 0),
          onPath(static_cast<size_t>(gr.vertexCount()) + 1, 0),
          adjCount(static_cast<size_t>(gr.vertexCount()) + 1, 0) {}

    void dfs(int v, int len) {
        if (v == target) {
            best = std::max(best, len);
            return;
        }
        for (int w : g.neighbors(v)) {
            if (onPath[static_cast<size_t>(w)]) continue;
            if (adjCount[static_cast<size_t>(w)] != 1) continue;
            if (w != target && blockedInterior[static_cast<size_t>(w)]) continue;
            onPath[static_cast<size_t>(w)] = 1;
            for (int x : g.neighbors(w)) ++adjCount[static_cast<size_t>(x)];
            dfs(w, len + 1);
            for (int x : g.neighbors(w)) --adjCount[static_cast<size_t>(x)];
            onPath[static_cast<size_t>(w)] = 0;
        }
    }
};

int enumerateLadderPair(int k, int u, int v, const std::vector<int>& deg2Others) {
    std::vector<GridCoord> cells;
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < 2; ++y) cells.push_back({x, y});
    GridGraph gg = buildGridGraph(cells);
    LadderEnum en(gg.graph, v);
    for (int w : deg2Others) en.blockedInterior[static_cast<size_t>(w)] = 1;
    en.onPath[static_cast<size_t>(u)] = 1;
    for (int x : gg.graph.neighbors(u)) ++en.adjCount[static_cast<size_t>(x)];
    en.dfs(u, 0);
    return std::max(en.best, 0);
}

} // namespace

int ladderEnumeratedValue(int k, LadderCase c, int t) {
    if (k < 2 || t < 0 || t > 2) fail(Errc::InvalidCase, "ladder enumeration: bad k or t");
    // ids in the canonical 2 x k grid: (x,y) -> 2x + y + 1
    int a = 1, b = 2, ya = 2 * (k - 1) + 1, yb = 2 * k;
    int u, v;
    std::array<int, 2> others{};
    switch (c) {
    case LadderCase::Adjacent:
        u = a, v = b, others = {ya, yb};
        break;
    case LadderCase::LongSide:
        if (k < 3) fail(Errc::InvalidCase, "long-side extremity pairs need k >= 3");
        u = a, v = ya, others = {b, yb};
        break;
    case LadderCase::Diagonal:
        u = a, v = yb, others = {b, ya};
        break;
    default:
        fail(Errc::InvalidCase, "bad ladder case");
    }
    // only the count of degree-2 extremities matters; both t = 1 choices agree
    // by the ladder's symmetry, so take the first
    std::vector<int> deg2(others.begin(), others.begin() + t);
    return enumerateLadderPair(k, u, v, deg2);
}

int ladderLongestInducedPath(int k, LadderCase c, int t) {
    if (k < 2 || t < 0 || t > 2) fail(Errc::InvalidCase, "ladder lookup: bad k or t");
    if (c == LadderCase::Adjacent) return 1;
    if (k <= 8) {
        // exact values for small k, where the closed formulas are not reliable
        static const auto table = [] {
            std::map<std::tuple<int, int, int>, int> m;
            for (int kk = 2; kk <= 8; ++kk)
                for (LadderCase cc : {LadderCase::LongSide, LadderCase::Diagonal}) {
                    if (cc == LadderCase::LongSide && kk < 3) continue;
                    for (int tt = 0; tt <= 2; ++tt)
                        m[{kk, static_cast<int>(cc), tt}] = ladderEnumeratedValue(kk, cc, tt);
                }
            return m;
        }();
        return table.at({k, static_cast<int>(c), t});
    }
    return ladderFormulaValue(k, c, t);
}

LadderDecomposition decomposeLadders(const GridGraph& gg) {
    const Graph& g = gg.graph;
    const int n = g.vertexCount();
    std::string why;
    if (!validateSolidGrid(gg, &why))
        fail(Errc::NotSolidGridDelta3, "not a solid grid graph: " + why);
    if (g.maxDegree() > 3)
        fail(Errc::NotSolidGridDelta3, "max degree " + std::to_string(g.maxDegree()) + " > 3");
    if (!g.connected()) fail(Errc::NotSolidGridDelta3, "graph is not connected");

    std::map<GridCoord, int> at;
    for (int v = 1; v <= n; ++v) at[gg.coordOf(v)] = v;
    auto vertexAt = [&](int x, int y) -> int {
        auto it = at.find({x, y});
        return it == at.end() ? 0 : it->second;
    };

    // unit squares, keyed by lower-left corner
    std::set<GridCoord> squares;
    for (int v = 1; v <= n; ++v) {
        GridCoord c = gg.coordOf(v);
        if (vertexAt(c.x + 1, c.y) && vertexAt(c.x, c.y + 1) && vertexAt(c.x + 1, c.y + 1))
            squares.insert(c);
    }

    LadderDecomposition dec;
    dec.ladderOf.assign(static_cast<size_t>(n) + 1, -1);

    std::set<GridCoord> seen;
    for (GridCoord s : squares) {
        if (seen.count(s)) continue;
        bool right = squares.count({s.x + 1, s.y}) || squares.count({s.x - 1, s.y});
        bool up = squares.count({s.x, s.y + 1}) || squares.count({s.x, s.y - 1});
        if (right && up)
            fail(Errc::NotSolidGridDelta3,
                 "unit squares chain non-linearly near (" + std::to_string(s.x) + "," +
                     std::to_string(s.y) + ")");
        Ladder lad;
        if (!up) { // horizontal run (also the isolated-square case)
            int x0 = s.x, x1 = s.x;
            while (squares.count({x0 - 1, s.y})) --x0;
            while (squares.count({x1 + 1, s.y})) ++x1;
            for (int x = x0; x <= x1; ++x) seen.insert({x, s.y});
            lad.horizontal = true;
            lad.k = x1 - x0 + 2;
            for (int x = x0; x <= x1 + 1; ++x)
                lad.columns.push_back({vertexAt(x, s.y), vertexAt(x, s.y + 1)});
        } else {
            int y0 = s.y, y1 = s.y;
            while (squares.count({s.x, y0 - 1})) --y0;
            while (squares.count({s.x, y1 + 1})) ++y1;
            for (int y = y0; y <= y1; ++y) seen.insert({s.x, y});
            lad.horizontal = false;
            lad.k = y1 - y0 + 2;
            for (int y = y0; y <= y1 + 1; ++y)
                lad.columns.push_back({vertexAt(s.x, y), vertexAt(s.x + 1, y)});
        }
        lad.ext = {lad.columns.front()[0], lad.columns.back()[0], lad.columns.front()[1],
                   lad.columns.back()[1]};
        int idx = static_cast<int>(dec.ladders.size());
        for (int v : lad.vertices()) {
            if (dec.ladderOf[static_cast<size_t>(v)] != -1)
                fail(Errc::NotSolidGridDelta3,
                     "vertex " + std::to_string(v) + " would belong to two ladders");
            dec.ladderOf[static_cast<size_t>(v)] = idx;
        }
        dec.ladders.push_back(std::move(lad));
    }

    // connectors: components of the remaining vertices
    std::vector<char> visited(static_cast<size_t>(n) + 1, 0);
    for (int s = 1; s <= n; ++s) {
        if (visited[static_cast<size_t>(s)] || dec.ladderOf[static_cast<size_t>(s)] != -1)
            continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        visited[static_cast<size_t>(s)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!visited[static_cast<size_t>(w)] && dec.ladderOf[static_cast<size_t>(w)] == -1) {
                    visited[static_cast<size_t>(w)] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        dec.connectors.push_back(std::move(comp));
    }
    return dec;
}

WeightedGraph transform(const GridGraph& gg) {
    LadderDecomposition dec = decomposeLadders(gg);
    const Graph& g = gg.graph;
    const int n = g.vertexCount();

    std::vector<char> isExt(static_cast<size_t>(n) + 1, 0);
    for (const Ladder& lad : dec.ladders)
        for (int v : lad.ext) isExt[static_cast<size_t>(v)] = 1;

    WeightedGraph wg;
    wg.n = n;
    wg.present.assign(static_cast<size_t>(n) + 1, 0);
    wg.adj.assign(static_cast<size_t>(n) + 1, {});
    wg.hostDegree.assign(static_cast<size_t>(n) + 1, 0);
    for (int v = 1; v <= n; ++v) {
        if (dec.ladderOf[static_cast<size_t>(v)] == -1 || isExt[static_cast<size_t>(v)]) {
            wg.present[static_cast<size_t>(v)] = 1;
            wg.hostDegree[static_cast<size_t>(v)] = g.degree(v);
        }
    }

    // grid edges that survive: everything not interior to a ladder
    for (auto [u, v] : g.edges()) {
        int lu = dec.ladderOf[static_cast<size_t>(u)], lv = dec.ladderOf[static_cast<size_t>(v)];
        if (lu != -1 && lu == lv) continue; // handled by that ladder's K4
        wg.addEdge(u, v, 1);
    }

    for (size_t li = 0; li < dec.ladders.size(); ++li) {
        const Ladder& lad = dec.ladders[li];
        auto deg2 = [&](int v) { return g.degree(v) == 2; };
        const auto [A, B, C, D] = lad.ext;
        struct PairSpec {
            int u, v, o1, o2;
            LadderCase c;
        };
        LadderCase side = lad.k >= 3 ? LadderCase::LongSide : LadderCase::Adjacent;
        const PairSpec pairs[6] = {
            {A, C, B, D, LadderCase::Adjacent}, {B, D, A, C, LadderCase::Adjacent},
            {A, B, C, D, side},                 {C, D, A, B, side},
            {A, D, B, C, LadderCase::Diagonal}, {B, C, A, D, LadderCase::Diagonal},
        };
        for (const PairSpec& p : pairs) {
            int t = (deg2(p.o1) ? 1 : 0) + (deg2(p.o2) ? 1 : 0);
            int w = ladderLongestInducedPath(lad.k, p.c, t);
            if (w >= 1)
                wg.addEdge(p.u, p.v, w,
                           {static_cast<int>(li), lad.k, p.c, p.o1, p.o2});
        }
    }
    for (int v = 1; v <= n; ++v)
        std::sort(wg.adj[static_cast<size_t>(v)].begin(), wg.adj[static_cast<size_t>(v)].end(),
                  [](const WeightedGraph::Edge& a, const WeightedGraph::Edge& b) {
                      return a.to < b.to;
                  });
    return wg;
}

namespace {

struct WeightedSearch {
    const WeightedGraph& wg;
    std::vector<char> onPath;
    std::vector<int> adjCount;
    std::vector<int> ladderInto; // ladder id of the K4 edge used to reach v, or -1
    int best = -1;

    explicit WeightedSearch(const WeightedGraph& w)
        : wg(w),
          onPath(static_cast<size_t>(w.n) + 1, 0),
          adjCount(static_cast<size_t>(w.n) + 1, 0),
          ladderInto(static_cast<size_t>(w.n) + 1, -1) {}

    void push(int v) {
        onPath[static_cast<size_t>(v)] = 1;
        for (const auto& e : wg.adj[static_cast<size_t>(v)]) ++adjCount[static_cast<size_t>(e.to)];
    }
    void pop(int v) {
        onPath[static_cast<size_t>(v)] = 0;
        for (const auto& e : wg.adj[static_cast<size_t>(v)]) --adjCount[static_cast<size_t>(e.to)];
    }

    // Weight a stop-claim through e may contribute. An end-inside-the-ladder
    // claim is only sound at the path's first touch of that ladder (anything
    // deeper can collide with vertices the path already committed to), and
    // extremities already on the path block routes like degree-2 ones do.
    // 0 = no usable route.
    int claimWeight(int from, const WeightedGraph::Edge& e) const {
        if (e.ladder.ladder < 0) return e.weight;
        if (ladderInto[static_cast<size_t>(from)] == e.ladder.ladder) return 0;
        auto blocked = [&](int o) {
            return onPath[static_cast<size_t>(o)] || wg.hostDegree[static_cast<size_t>(o)] <= 2;
        };
        int t = (blocked(e.ladder.other1) ? 1 : 0) + (blocked(e.ladder.other2) ? 1 : 0);
        return ladderLongestInducedPath(e.ladder.k, e.ladder.c, t);
    }

    void dfs(int v, int len) {
        for (const auto& e : wg.adj[static_cast<size_t>(v)]) {
            int y = e.to;
            if (onPath[static_cast<size_t>(y)]) continue;
            // adjCount includes v itself, so >= 2 means a chord to the path
            bool stop = wg.hostDegree[static_cast<size_t>(y)] <= 2 ||
                        adjCount[static_cast<size_t>(y)] >= 2;
            if (stop) {
                int w = claimWeight(v, e);
                if (w >= 1) best = std::max(best, len + w - 1);
            } else {
                ladderInto[static_cast<size_t>(y)] = e.ladder.ladder;
                push(y);
                dfs(y, len + e.weight);
                pop(y);
            }
        }
    }
};

} // namespace

int longestInducedPathFrom(const WeightedGraph& wg, int u) {
    if (u < 1 || u > wg.n || !wg.present[static_cast<size_t>(u)])
        fail(Errc::UnknownVertex, "longestInducedPathFrom: vertex " + std::to_string(u) +
                                      " not in the transformed graph");
    WeightedSearch search(wg);
    search.push(u);
    search.dfs(u, 0);
    return std::max(search.best, 0);
}

SolidGridExplain maxTimeSolidGridExplain(const GridGraph& gg) {
    SolidGridExplain ex;
    ex.decomposition = decomposeLadders(gg);
    ex.transformed = transform(gg);
    ex.t = 0;
    for (int u : ex.transformed.vertices()) {
        int d = ex.transformed.hostDegree[static_cast<size_t>(u)];
        if (d < 2) continue;
        int len = longestInducedPathFrom(ex.transformed, u);
        int cand = d == 2 ? len + 1 : (len + 2) / 2;
        if (cand > ex.t) {
            ex.t = cand;
            ex.bestStart = u;
        }
    }
    return ex;
}

int maxTimeSolidGrid(const GridGraph& gg) { return maxTimeSolidGridExplain(gg).t; }

} // namespace perc
