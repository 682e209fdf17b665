#ifndef PERC_GRAPH_HPP
#define PERC_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace perc {

// Simple undirected graph on dense 1-based vertex ids. Immutable after
// construction; adjacency lists are kept sorted.
class Graph {
public:
    Graph() = default;
    Graph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertexCount() const { return n_; }
    int edgeCount() const { return m_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const;
    bool adjacent(int u, int v) const;
    int maxDegree() const;
    bool connected() const;
    std::vector<std::pair<int, int>> edges() const; // u < v, sorted

    void checkVertex(int v) const;

private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
};

struct GridCoord {
    int x = 0;
    int y = 0;
    friend bool operator==(GridCoord a, GridCoord b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(GridCoord a, GridCoord b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

// Graph plus an injective lattice embedding (coords[v] for v in 1..n).
struct GridGraph {
    Graph graph;
    std::vector<GridCoord> coords; // index 0 unused

    GridCoord coordOf(int v) const { return coords[static_cast<size_t>(v)]; }
    std::optional<int> vertexAt(GridCoord c) const;
};

// Builds the induced grid graph on the given lattice points: ids are assigned
// in (x,y)-lexicographic order and every unit-distance pair becomes an edge.
GridGraph buildGridGraph(std::vector<GridCoord> cells);

using Path = std::vector<int>;

bool isPath(const Graph& g, const Path& p);
bool isInducedPath(const Graph& g, const Path& p);

// N_{<=k}(u): all vertices at distance <= k from u, including u itself.
std::vector<int> neighborhoodWithin(const Graph& g, int u, int k);
// N_{>=k}(u): complement of N_{<=k-1}(u); excludes u for k >= 1.
std::vector<int> neighborhoodBeyond(const Graph& g, int u, int k);

// Exact longest simple path length (edge count) by exhaustive DFS.
int longestPathBruteForce(const Graph& g, int capVertices = 12);

bool validateGrid(const GridGraph& gg, std::string* why = nullptr);
bool validateSolidGrid(const GridGraph& gg, std::string* why = nullptr);

// Text format: `p perc n m`, `e u v` lines, optional `coord v x y` lines
// (all vertices or none), comments starting with `c`.
struct ParsedGraph {
    Graph graph;
    std::vector<GridCoord> coords; // empty when no coord lines
    bool hasCoords() const { return !coords.empty(); }
    GridGraph toGrid() const;
};

ParsedGraph parseGraph(std::istream& in);
ParsedGraph parseGraphFile(const std::string& path);
void writeGraph(std::ostream& out, const Graph& g,
                const std::vector<GridCoord>* coords = nullptr,
                const std::vector<std::string>& comments = {});
void writeGraph(std::ostream& out, const GridGraph& gg,
                const std::vector<std::string>& comments = {});

std::vector<int> parseSeedFile(const std::string& path, const Graph& g);
std::vector<int> parseSeeds(std::istream& in, const Graph& g);

} // namespace perc

#endif
