#include "perc/graph.hpp"
#include "perc/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

namespace perc {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n) {
    if (n < 0) fail(Errc::BadInput, "vertex count must be non-negative");
    adj_.assign(static_cast<size_t>(n) + 1, {});
    for (auto [u, v] : edges) {
        if (u < 1 || u > n_ || v < 1 || v > n_)
            fail(Errc::UnknownVertex,
                 "edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
        if (u == v) fail(Errc::BadInput, "self-loop at vertex " + std::to_string(u));
        adj_[static_cast<size_t>(u)].push_back(v);
        adj_[static_cast<size_t>(v)].push_back(u);
    }
    for (int v = 1; v <= n_; ++v) {
        auto& a = adj_[static_cast<size_t>(v)];
        std::sort(a.begin(), a.end());
        if (std::adjacent_find(a.begin(), a.end()) != a.end())
            fail(Errc::BadInput, "parallel edge at vertex " + std::to_string(v));
        m_ += static_cast<int>(a.size());
    }
    m_ /= 2;
}

void Graph::checkVertex(int v) const {
    if (v < 1 || v > n_)
        fail(Errc::UnknownVertex, "unknown vertex id " + std::to_string(v));
}

const std::vector<int>& Graph::neighbors(int v) const {
    checkVertex(v);
    return adj_[static_cast<size_t>(v)];
}

int Graph::degree(int v) const { return static_cast<int>(neighbors(v).size()); }

bool Graph::adjacent(int u, int v) const {
    checkVertex(u);
    checkVertex(v);
    const auto& a = adj_[static_cast<size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
}

int Graph::maxDegree() const {
    int d = 0;
    for (int v = 1; v <= n_; ++v) d = std::max(d, degree(v));
    return d;
}

bool Graph::connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<size_t>(n_) + 1, 0);
    std::queue<int> q;
    q.push(1);
    seen[1] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj_[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++cnt;
                q.push(w);
            }
    }
    return cnt == n_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(static_cast<size_t>(m_));
    for (int u = 1; u <= n_; ++u)
        for (int v : adj_[static_cast<size_t>(u)])
            if (u < v) es.emplace_back(u, v);
    return es;
}

std::optional<int> GridGraph::vertexAt(GridCoord c) const {
    for (int v = 1; v <= graph.vertexCount(); ++v)
        if (coords[static_cast<size_t>(v)] == c) return v;
    return std::nullopt;
}

GridGraph buildGridGraph(std::vector<GridCoord> cells) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    const int n = static_cast<int>(cells.size());
    std::map<GridCoord, int> id;
    for (int i = 0; i < n; ++i) id[cells[static_cast<size_t>(i)]] = i + 1;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        GridCoord c = cells[static_cast<size_t>(i)];
        for (GridCoord d : {GridCoord{c.x + 1, c.y}, GridCoord{c.x, c.y + 1}}) {
            auto it = id.find(d);
            if (it != id.end()) edges.emplace_back(i + 1, it->second);
        }
    }
    GridGraph gg;
    gg.graph = Graph(n, edges);
    gg.coords.resize(static_cast<size_t>(n) + 1);
    for (int i = 0; i < n; ++i) gg.coords[static_cast<size_t>(i) + 1] = cells[static_cast<size_t>(i)];
    return gg;
}

bool isPath(const Graph& g, const Path& p) {
    if (p.empty()) fail(Errc::BadInput, "empty path");
    for (int v : p) g.checkVertex(v);
    std::vector<int> sorted(p);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    for (size_t i = 0; i + 1 < p.size(); ++i)
        if (!g.adjacent(p[i], p[i + 1])) return false;
    return true;
}

bool isInducedPath(const Graph& g, const Path& p) {
    if (!isPath(g, p)) return false;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 2; j < p.size(); ++j)
            if (g.adjacent(p[i], p[j])) return false;
    return true;
}

std::vector<int> neighborhoodWithin(const Graph& g, int u, int k) {
    g.checkVertex(u);
    if (k < 0) fail(Errc::BadInput, "negative radius");
    std::vector<int> dist(static_cast<size_t>(g.vertexCount()) + 1, -1);
    std::queue<int> q;
    dist[static_cast<size_t>(u)] = 0;
    q.push(u);
    std::vector<int> out{u};
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (dist[static_cast<size_t>(v)] == k) continue;
        for (int w : g.neighbors(v))
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                out.push_back(w);
                q.push(w);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> neighborhoodBeyond(const Graph& g, int u, int k) {
    std::vector<int> within =
        k >= 1 ? neighborhoodWithin(g, u, k - 1) : std::vector<int>{};
    std::vector<char> in(static_cast<size_t>(g.vertexCount()) + 1, 0);
    for (int v : within) in[static_cast<size_t>(v)] = 1;
    std::vector<int> out;
    for (int v = 1; v <= g.vertexCount(); ++v)
        if (!in[static_cast<size_t>(v)]) out.push_back(v);
    return out;
}

namespace {

int longestPathFrom(const Graph& g, int v, std::vector<char>& used, int len) {
    used[static_cast<size_t>(v)] = 1;
    int best = len;
    for (int w : g.neighbors(v))
        if (!used[static_cast<size_t>(w)])
            best = std::max(best, longestPathFrom(g, w, used, len + 1));
    used[static_cast<size_t>(v)] = 0;
    return best;
}

} // namespace

int longestPathBruteForce(const Graph& g, int capVertices) {
    if (g.vertexCount() > capVertices)
        fail(Errc::CapExceeded, "longestPathBruteForce: n = " + std::to_string(g.vertexCount()) +
                                    " exceeds cap " + std::to_string(capVertices));
    std::vector<char> used(static_cast<size_t>(g.vertexCount()) + 1, 0);
    int best = 0;
    for (int v = 1; v <= g.vertexCount(); ++v)
        best = std::max(best, longestPathFrom(g, v, used, 0));
    return best;
}

namespace {

bool setWhy(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

int componentCount(const Graph& g) {
    const int n = g.vertexCount();
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    int comps = 0;
    for (int s = 1; s <= n; ++s) {
        if (seen[static_cast<size_t>(s)]) continue;
        ++comps;
        std::queue<int> q;
        q.push(s);
        seen[static_cast<size_t>(s)] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : g.neighbors(v))
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    q.push(w);
                }
        }
    }
    return comps;
}

} // namespace

bool validateGrid(const GridGraph& gg, std::string* why) {
    const Graph& g = gg.graph;
    const int n = g.vertexCount();
    if (static_cast<int>(gg.coords.size()) != n + 1)
        return setWhy(why, "coords must cover vertices 1..n");
    std::map<GridCoord, int> at;
    for (int v = 1; v <= n; ++v) {
        auto [it, fresh] = at.emplace(gg.coordOf(v), v);
        if (!fresh)
            fail(Errc::BadInput, "non-injective coordinates: vertices " +
                                     std::to_string(it->second) + " and " + std::to_string(v));
    }
    for (auto [u, v] : g.edges()) {
        GridCoord a = gg.coordOf(u), b = gg.coordOf(v);
        if (std::abs(a.x - b.x) + std::abs(a.y - b.y) != 1)
            return setWhy(why, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                   " does not join lattice neighbours");
    }
    for (int v = 1; v <= n; ++v) {
        GridCoord c = gg.coordOf(v);
        for (GridCoord d : {GridCoord{c.x + 1, c.y}, GridCoord{c.x, c.y + 1}}) {
            auto it = at.find(d);
            if (it != at.end() && !g.adjacent(v, it->second))
                return setWhy(why, "vertices " + std::to_string(v) + " and " +
                                       std::to_string(it->second) +
                                       " are at distance 1 but not adjacent (not induced)");
        }
    }
    return true;
}

bool validateSolidGrid(const GridGraph& gg, std::string* why) {
    if (!validateGrid(gg, why)) return false;
    const Graph& g = gg.graph;
    std::map<GridCoord, int> at;
    for (int v = 1; v <= g.vertexCount(); ++v) at[gg.coordOf(v)] = v;
    // Count unit squares; a planar lattice embedding has E - V + C bounded
    // faces, and the graph is solid exactly when all of them are unit squares.
    int squares = 0;
    for (int v = 1; v <= g.vertexCount(); ++v) {
        GridCoord c = gg.coordOf(v);
        if (at.count({c.x + 1, c.y}) && at.count({c.x, c.y + 1}) && at.count({c.x + 1, c.y + 1}))
            ++squares;
    }
    int boundedFaces = g.edgeCount() - g.vertexCount() + componentCount(g);
    if (squares != boundedFaces)
        return setWhy(why, "bounded face of area > 1 (squares " + std::to_string(squares) +
                               ", independent cycles " + std::to_string(boundedFaces) + ")");
    return true;
}

GridGraph ParsedGraph::toGrid() const {
    if (!hasCoords()) fail(Errc::BadInput, "graph file has no coord lines");
    GridGraph gg{graph, coords};
    std::string why;
    if (!validateGrid(gg, &why)) fail(Errc::BadInput, "not a grid graph: " + why);
    return gg;
}

ParsedGraph parseGraph(std::istream& in) {
    std::string line;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, GridCoord>> coordLines;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        auto ctx = [&] { return " (line " + std::to_string(lineno) + ")"; };
        if (tag == "c") continue;
        if (tag == "p") {
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "perc" || n < 0 || m < 0)
                fail(Errc::BadInput, "malformed problem line" + ctx());
        } else if (tag == "e") {
            int u, v;
            if (!(ls >> u >> v)) fail(Errc::BadInput, "malformed edge line" + ctx());
            edges.emplace_back(u, v);
        } else if (tag == "coord") {
            int v, x, y;
            if (!(ls >> v >> x >> y)) fail(Errc::BadInput, "malformed coord line" + ctx());
            coordLines.emplace_back(v, GridCoord{x, y});
        } else {
            fail(Errc::BadInput, "unknown line tag '" + tag + "'" + ctx());
        }
    }
    if (n < 0) fail(Errc::BadInput, "missing `p perc n m` line");
    if (static_cast<int>(edges.size()) != m)
        fail(Errc::BadInput, "edge count mismatch: header says " + std::to_string(m) +
                                 ", found " + std::to_string(edges.size()));
    ParsedGraph pg;
    pg.graph = Graph(n, edges);
    if (!coordLines.empty()) {
        if (static_cast<int>(coordLines.size()) != n)
            fail(Errc::BadInput, "coord lines must cover all vertices or none");
        pg.coords.assign(static_cast<size_t>(n) + 1, {});
        std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
        for (auto& [v, c] : coordLines) {
            pg.graph.checkVertex(v);
            if (seen[static_cast<size_t>(v)])
                fail(Errc::BadInput, "duplicate coord for vertex " + std::to_string(v));
            seen[static_cast<size_t>(v)] = 1;
            pg.coords[static_cast<size_t>(v)] = c;
        }
    }
    return pg;
}

ParsedGraph parseGraphFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadInput, "cannot open graph file " + path);
    return parseGraph(in);
}

void writeGraph(std::ostream& out, const Graph& g, const std::vector<GridCoord>* coords,
                const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "c " << c << "\n";
    out << "p perc " << g.vertexCount() << " " << g.edgeCount() << "\n";
    for (auto [u, v] : g.edges()) out << "e " << u << " " << v << "\n";
    if (coords)
        for (int v = 1; v <= g.vertexCount(); ++v)
            out << "coord " << v << " " << (*coords)[static_cast<size_t>(v)].x << " "
                << (*coords)[static_cast<size_t>(v)].y << "\n";
}

void writeGraph(std::ostream& out, const GridGraph& gg, const std::vector<std::string>& comments) {
    writeGraph(out, gg.graph, &gg.coords, comments);
}

std::vector<int> parseSeeds(std::istream& in, const Graph& g) {
    std::vector<int> seeds;
    std::string tok;
    while (in >> tok) {
        if (tok == "c") { // allow comment lines in seed files too
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        try {
            seeds.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            fail(Errc::BadInput, "bad seed token '" + tok + "'");
        }
    }
    for (int v : seeds) g.checkVertex(v);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    return seeds;
}

std::vector<int> parseSeedFile(const std::string& path, const Graph& g) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadInput, "cannot open seed file " + path);
    return parseSeeds(in, g);
}

} // namespace perc
