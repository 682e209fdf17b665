#ifndef PERC_PERCOLATE_HPP
#define PERC_PERCOLATE_HPP

#include "perc/graph.hpp"

#include <optional>
#include <vector>

namespace perc {

// Sentinel for vertices that are never infected. Kept out of arithmetic:
// use InfectionTrace::timeOf for an optional-typed view.
inline constexpr int kNever = -1;

// Result of running 2-neighbour bootstrap percolation from a seed set.
struct InfectionTrace {
    std::vector<int> seeds;               // sorted, deduplicated
    std::vector<int> time;                // per vertex (1-based); kNever if uninfected
    std::vector<std::vector<int>> rounds; // rounds[i] = vertices infected at time i+1
    bool percolating = false;
    int lastRound = 0; // t(S) when percolating; last round with news otherwise

    std::optional<int> timeOf(int v) const {
        int t = time[static_cast<size_t>(v)];
        if (t == kNever) return std::nullopt;
        return t;
    }
};

InfectionTrace percolate(const Graph& g, const std::vector<int>& seeds);

bool isPercolating(const Graph& g, const std::vector<int>& seeds);
// Errors with NotPercolating when the seed set does not infect everything.
int percolationTime(const Graph& g, const std::vector<int>& seeds);
std::optional<int> timeOf(const Graph& g, const std::vector<int>& seeds, int v);

// A path u_0,...,u_k = v with timeOf(u_i) = i; ties broken toward the
// smallest eligible predecessor id.
Path extractInfectionPath(const Graph& g, const std::vector<int>& seeds, int v);
Path extractInfectionPath(const Graph& g, const InfectionTrace& trace, int v);

// Lemma-1 witness: with S' = seeds + {vprime}, requires a strict drop of
// timeOf(v) and returns an S'-infection path from vprime to v (times strictly
// increase along it). Errors with NoSpeedup otherwise.
Path lemma1Witness(const Graph& g, const std::vector<int>& seeds, int v, int vprime);

} // namespace perc

#endif
