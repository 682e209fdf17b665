#ifndef PERC_GENERATORS_HPP
#define PERC_GENERATORS_HPP

#include "perc/graph.hpp"
#include "perc/solidgrid.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace perc {

enum class VertexClass { Original, Auxiliary, Added };

struct ReductionResult {
    GridGraph gg;
    std::vector<VertexClass> classes; // per vertex of gg
    std::vector<int> corners;         // degree-2 vertices of the output
    std::vector<int> originalIds;     // output ids of the original vertices

    std::vector<std::string> classComments() const;
};

// Longest-path -> percolation-time reduction: scales the grid by three,
// turns edges into 4-vertex paths, pads originals to degree 3 and attaches
// the directional auxiliary neighbours. G has a path of length >= k iff
// t(G') >= 3k+2.
ReductionResult gridReduction(const GridGraph& gg);

// Checks deg(G') <= 3, every original vertex has degree 3, every auxiliary
// vertex touches exactly one original, and the corner<->original distance-2
// bijection. Errors with a diagnostic on violation.
void auditReduction(const ReductionResult& r);

// Replaces every weight-w edge by a w-edge path whose interior vertices each
// carry one pendant neighbour; vertex ids are re-numbered densely.
Graph expandWeightedEdges(const WeightedGraph& wg);

GridGraph genLadder(int k);

// Connected graph with max degree <= maxDeg, deterministic under seed.
Graph genRandomMaxDeg(int n, int maxDeg, uint64_t seed);

// Connected induced grid graph sampled from a w x h window.
GridGraph genRandomGrid(int w, int h, double density, uint64_t seed);

// All connected induced lattice subgraphs with <= maxVertices vertices, up to
// translation (and optionally up to the 8 lattice symmetries).
void enumerateGridGraphs(int maxVertices, bool dedupSymmetries,
                         const std::function<void(const GridGraph&)>& emit);

// The solid ones with max degree <= 3, i.e. the solid-grid solver's domain.
void genSolidPolyominoes(int maxVertices, const std::function<void(const GridGraph&)>& emit);

} // namespace perc

#endif
