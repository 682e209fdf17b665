#include "perc/delta3.hpp"
#include "perc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace perc {

namespace {

void requireDelta3(const Graph& g) {
    if (!g.connected()) fail(Errc::Disconnected, "delta3 solver requires a connected graph");
    if (g.maxDegree() != 3)
        fail(Errc::WrongDegreeClass, "delta3 solver requires max degree exactly 3, got " +
                                         std::to_string(g.maxDegree()));
}

// DFS over induced paths whose non-start vertices all have degree 3.
// adjCount[w] = number of path vertices adjacent to w; w can extend the path
// ending at v exactly when its only path neighbour is v.
struct InducedPathSearch {
    const Graph& g;
    std::vector<int> adjCount;
    std::vector<char> onPath;
    int maxDepth;      // stop exploring beyond this length; -1 = unbounded
    int best = 0;
    bool foundFull = false;
    uint64_t steps = 0;
    uint64_t workCap;

    InducedPathSearch(const Graph& gr, int depth, uint64_t cap)
        : g(gr),
          adjCount(static_cast<size_t>(gr.vertexCount()) + 1, 0),
          onPath(static_cast<size_t>(gr.vertexCount()) + 1, 0),
          maxDepth(depth),
          workCap(cap) {}

    void push(int v) {
        onPath[static_cast<size_t>(v)] = 1;
        for (int w : g.neighbors(v)) ++adjCount[static_cast<size_t>(w)];
    }
    void pop(int v) {
        onPath[static_cast<size_t>(v)] = 0;
        for (int w : g.neighbors(v)) --adjCount[static_cast<size_t>(w)];
    }

    void dfs(int v, int len) {
        best = std::max(best, len);
        if (maxDepth >= 0 && len >= maxDepth) {
            foundFull = true;
            return;
        }
        for (int w : g.neighbors(v)) {
            if (onPath[static_cast<size_t>(w)]) continue;
            if (adjCount[static_cast<size_t>(w)] != 1) continue; // would break inducedness
            if (g.degree(w) != 3) continue;                      // interior vertices need degree 3
            if (++steps > workCap)
                fail(Errc::WorkCapExceeded,
                     "delta3 search exceeded work cap of " + std::to_string(workCap) + " steps");
            push(w);
            dfs(w, len + 1);
            pop(w);
            if (foundFull) return;
        }
    }

    // longest qualifying path from a given start (start may have any degree)
    int longestFrom(int start) {
        best = 0;
        foundFull = false;
        push(start);
        dfs(start, 0);
        pop(start);
        return best;
    }
};

} // namespace

int maxTimeDelta3(const Graph& g, const Delta3Options& opts) {
    requireDelta3(g);
    if (g.vertexCount() > opts.capVertices)
        fail(Errc::CapExceeded, "maxTimeDelta3: n = " + std::to_string(g.vertexCount()) +
                                    " exceeds cap " + std::to_string(opts.capVertices));
    InducedPathSearch search(g, -1, opts.workCap);
    int best = 1;
    for (int v = 1; v <= g.vertexCount(); ++v) {
        int d = g.degree(v);
        if (d == 2) {
            best = std::max(best, search.longestFrom(v) + 1);
        } else if (d == 3) {
            best = std::max(best, (search.longestFrom(v) + 2) / 2);
        }
        // degree <= 1 starts can never head a qualifying path
    }
    return best;
}

bool decideDelta3(const Graph& g, int k, const Delta3Options& opts) {
    requireDelta3(g);
    if (k <= 1) return true; // any degree-2 or degree-3 vertex is a depth-0 witness
    const double cap = opts.logCapC * std::log2(static_cast<double>(g.vertexCount()));
    if (static_cast<double>(k) > cap)
        fail(Errc::WorkCapExceeded,
             "decideDelta3: k = " + std::to_string(k) + " exceeds c*log2(n) = " +
                 std::to_string(cap) + " (polynomial-time guarantee holds only below it)");
    InducedPathSearch search(g, 0, opts.workCap);
    for (int v = 1; v <= g.vertexCount(); ++v) {
        int d = g.degree(v);
        if (d != 2 && d != 3) continue;
        search.maxDepth = (d == 2) ? k - 1 : 2 * k - 2;
        if (search.longestFrom(v) >= search.maxDepth) return true;
    }
    return false;
}

} // namespace perc
