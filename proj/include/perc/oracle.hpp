#ifndef PERC_ORACLE_HPP
#define PERC_ORACLE_HPP

#include "perc/graph.hpp"

#include <vector>

namespace perc {

struct OracleResult {
    int t = 0;
    std::vector<int> witness; // sorted percolating set attaining t
};

struct OracleOptions {
    int capVertices = 20;
    bool pruneForced = true; // pre-fix all vertices of degree <= 1
    int jobs = 1;
};

// Exact t(G) by subset enumeration. Witness tie-break among maximizers:
// smallest cardinality, then lexicographically smallest id sequence.
OracleResult maxTimeExhaustive(const Graph& g, const OracleOptions& opts = {});

bool decideExhaustive(const Graph& g, int k, const OracleOptions& opts = {});

} // namespace perc

#endif
