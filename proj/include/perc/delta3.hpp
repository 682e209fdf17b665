#ifndef PERC_DELTA3_HPP
#define PERC_DELTA3_HPP

#include "perc/graph.hpp"

#include <cstdint>

namespace perc {

struct Delta3Options {
    int capVertices = 20;        // gate for the exact variant
    double logCapC = 4.0;        // decision variant accepts k <= c * log2(n)
    uint64_t workCap = 2'000'000'000; // DFS extension budget for the decision variant
};

// Exact t(G) for connected graphs with max degree exactly 3, via the
// induced-path characterisation: t(G) is the larger of
//   max |E(P)| + 1       over induced paths with one degree-2 extremity and
//                        every other vertex of degree 3, and
//   max (|E(P)| + 2) / 2 over induced paths with all vertices of degree 3,
// and at least 1.
int maxTimeDelta3(const Graph& g, const Delta3Options& opts = {});

// Depth-bounded variant: decides t(G) >= k by searching only for paths of
// the exact qualifying depth (k-1 from degree-2 starts, 2k-2 from degree-3
// starts). Refuses k above c * log2(n).
bool decideDelta3(const Graph& g, int k, const Delta3Options& opts = {});

} // namespace perc

#endif
