#ifndef PERC_SOLIDGRID_HPP
#define PERC_SOLIDGRID_HPP

#include "perc/graph.hpp"

#include <array>
#include <vector>

namespace perc {

// A maximal 2 x k block of unit squares. Extremities are the four vertices
// with only two neighbours inside the ladder; for k = 2 every vertex is one.
struct Ladder {
    int k = 0;                          // number of columns (k >= 2)
    bool horizontal = true;             // long side parallel to the x axis
    std::vector<std::array<int, 2>> columns; // columns[i] = {low row id, high row id}
    std::array<int, 4> ext{};           // A=first/low, B=last/low, C=first/high, D=last/high

    std::vector<int> vertices() const;
    std::vector<int> internalVertices() const;
};

struct LadderDecomposition {
    std::vector<Ladder> ladders;
    std::vector<std::vector<int>> connectors; // components of the non-ladder vertices
    std::vector<int> ladderOf;                // per vertex, ladder index or -1
};

enum class LadderCase { Adjacent, LongSide, Diagonal };

// For K4 edges, the ladder they abstract: the represented route may pass
// through the ladder's two other extremities, which matters to the search.
struct LadderEdgeInfo {
    int ladder = -1; // index into the decomposition
    int k = 0;
    LadderCase c = LadderCase::Adjacent;
    int other1 = 0, other2 = 0;
};

// Weighted graph over a subset of the host graph's vertices. A weight-w edge
// stands for a w-edge path whose w-1 interior vertices each carry a pendant
// neighbour; hostDegree records degrees in the original solid grid.
struct WeightedGraph {
    struct Edge {
        int to = 0;
        int weight = 0;
        LadderEdgeInfo ladder; // ladder.ladder == -1 for plain edges
    };
    int n = 0; // host vertex-id bound
    std::vector<char> present;
    std::vector<std::vector<Edge>> adj; // sorted by neighbour id
    std::vector<int> hostDegree;

    std::vector<int> vertices() const;
    void addEdge(int u, int v, int w, const LadderEdgeInfo& info = {});
    bool adjacent(int u, int v) const;
    int weightOf(int u, int v) const;
};

// Paper formula for the longest induced path between two ladder extremities
// that passes only by degree-3 vertices; t = how many of the two other
// extremities have degree 2. Floor is toward minus infinity.
int ladderFormulaValue(int k, LadderCase c, int t);

// Value the solver actually uses: exhaustive-enumeration table for k <= 8,
// the formula above that. 0 means no qualifying path exists.
int ladderLongestInducedPath(int k, LadderCase c, int t);

// Independent enumeration on a concrete 2 x k ladder (exposed for tests).
int ladderEnumeratedValue(int k, LadderCase c, int t);

LadderDecomposition decomposeLadders(const GridGraph& gg);

// Ladders replaced by weighted K4s on their extremities; all other edges of
// the grid keep weight 1. Extremity pairs with no qualifying path get no edge.
WeightedGraph transform(const GridGraph& gg);

// Longest weighted induced path from u whose last vertex is the only one that
// has host degree <= 2 (besides perhaps u) or is adjacent to an earlier path
// vertex, minus one.
int longestInducedPathFrom(const WeightedGraph& wg, int u);

// Exact t(G) for solid grid graphs with max degree <= 3 (Algorithm 1).
int maxTimeSolidGrid(const GridGraph& gg);

struct SolidGridExplain {
    LadderDecomposition decomposition;
    WeightedGraph transformed;
    int t = 0;
    int bestStart = 0;
};

SolidGridExplain maxTimeSolidGridExplain(const GridGraph& gg);

} // namespace perc

#endif
