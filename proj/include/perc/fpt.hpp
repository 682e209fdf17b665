#ifndef PERC_FPT_HPP
#define PERC_FPT_HPP

#include "perc/graph.hpp"

#include <optional>
#include <vector>

namespace perc {

struct FptOptions {
    int capBits = 24; // refuse a start vertex whose near ball exceeds this many free vertices
};

struct FptWitness {
    int u = 0;
    std::vector<int> sprime; // chosen seeds inside N_{<=k-1}(u) \ {u}
};

// Theorem-5 decision: t(G) >= k iff some u and some S' subset of
// N_{<=k-1}(u)\{u} make S = S' + N_{>=k}(u) percolate with u infected at
// exactly time k. First witness: smallest u, then lexicographic S'.
bool decideDeltaK(const Graph& g, int k, const FptOptions& opts = {},
                  std::optional<FptWitness>* witness = nullptr);

} // namespace perc

#endif
