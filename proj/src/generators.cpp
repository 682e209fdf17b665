#include "perc/generators.hpp"
#include "perc/errors.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <unordered_set>

namespace perc {

namespace {

std::string coordStr(GridCoord c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

} // namespace

std::vector<std::string> ReductionResult::classComments() const {
    auto classLine = [&](VertexClass cls, const char* name) {
        std::string line = name;
        for (int v = 1; v <= gg.graph.vertexCount(); ++v)
            if (classes[static_cast<size_t>(v)] == cls) line += " " + std::to_string(v);
        return line;
    };
    std::vector<std::string> out;
    out.push_back(classLine(VertexClass::Original, "original"));
    out.push_back(classLine(VertexClass::Auxiliary, "auxiliary"));
    std::string cs = "corner";
    for (int v : corners) cs += " " + std::to_string(v);
    out.push_back(cs);
    return out;
}

ReductionResult gridReduction(const GridGraph& gg) {
    std::string why;
    if (!validateGrid(gg, &why)) fail(Errc::BadInput, "reduction input is not a grid graph: " + why);
    if (gg.graph.maxDegree() > 3)
        fail(Errc::BadInput, "reduction input must have max degree <= 3");
    if (!gg.graph.connected()) fail(Errc::BadInput, "reduction input must be connected");

    enum class Cls { Original, Auxiliary, Added };
    std::map<GridCoord, Cls> cell;
    std::map<GridCoord, GridCoord> originalOfAux; // auxiliary -> its original's cell

    auto scaled = [&](int v) {
        GridCoord c = gg.coordOf(v);
        return GridCoord{3 * c.x, 3 * c.y};
    };

    const Graph& g = gg.graph;
    for (int v = 1; v <= g.vertexCount(); ++v) cell[scaled(v)] = Cls::Original;

    auto addAux = [&](GridCoord at, GridCoord orig) {
        if (cell.count(at))
            fail(Errc::PlacementConflict, "auxiliary placement conflict at " + coordStr(at));
        cell[at] = Cls::Auxiliary;
        originalOfAux[at] = orig;
    };

    // edges become 4-vertex paths: two auxiliaries between the scaled endpoints
    for (auto [u, v] : g.edges()) {
        GridCoord a = scaled(u), b = scaled(v);
        int dx = (b.x - a.x) / 3, dy = (b.y - a.y) / 3;
        addAux({a.x + dx, a.y + dy}, a);
        addAux({a.x + 2 * dx, a.y + 2 * dy}, b);
    }

    // pad original vertices to degree 3: free positions in the order
    // left, right, below, above
    std::vector<GridCoord> pads;
    for (int v = 1; v <= g.vertexCount(); ++v) {
        GridCoord o = scaled(v);
        int need = 3 - g.degree(v);
        const GridCoord cand[4] = {
            {o.x - 1, o.y}, {o.x + 1, o.y}, {o.x, o.y - 1}, {o.x, o.y + 1}};
        for (int i = 0; i < 4 && need > 0; ++i)
            if (!cell.count(cand[i])) {
                addAux(cand[i], o);
                pads.push_back(cand[i]);
                --need;
            }
        if (need > 0)
            fail(Errc::PlacementConflict, "no free position to pad original at " + coordStr(o));
    }

    // each auxiliary gets a sideways neighbour, keyed on where its original
    // sits (matching the paper's 4x4-block figure): above -> right,
    // below -> left, left -> below, right -> above; reuse an existing vertex
    // in the target cell when there is one
    std::vector<std::pair<GridCoord, GridCoord>> extraEdges; // aux -> added cell
    std::vector<GridCoord> auxCells;
    for (const auto& [at, cls] : cell)
        if (cls == Cls::Auxiliary) auxCells.push_back(at);
    for (GridCoord at : auxCells) {
        GridCoord o = originalOfAux.at(at);
        GridCoord target = at;
        if (o.y > at.y) // original above
            target = {at.x + 1, at.y};
        else if (o.y < at.y) // original below
            target = {at.x - 1, at.y};
        else if (o.x < at.x) // original at the left
            target = {at.x, at.y - 1};
        else // original at the right
            target = {at.x, at.y + 1};
        auto it = cell.find(target);
        if (it != cell.end()) {
            if (it->second != Cls::Added)
                fail(Errc::PlacementConflict,
                     "auxiliary neighbour cell " + coordStr(target) + " holds a non-added vertex");
        } else {
            cell[target] = Cls::Added;
        }
        extraEdges.emplace_back(at, target);
    }

    // padding auxiliaries are still of degree 2; complete them with an
    // opposite-side neighbour
    for (GridCoord at : pads) {
        GridCoord o = originalOfAux.at(at);
        GridCoord target{2 * at.x - o.x, 2 * at.y - o.y};
        if (cell.count(target))
            fail(Errc::PlacementConflict,
                 "pad completion cell " + coordStr(target) + " is already occupied");
        cell[target] = Cls::Added;
        extraEdges.emplace_back(at, target);
    }

    // assemble the grid graph: ids in (x,y)-lexicographic order, edges are
    // the unit-distance pairs (addAux guaranteed the embedding is induced)
    std::vector<GridCoord> cells;
    for (const auto& [at, cls] : cell) cells.push_back(at);
    ReductionResult res;
    res.gg = buildGridGraph(cells);
    res.classes.assign(static_cast<size_t>(res.gg.graph.vertexCount()) + 1, VertexClass::Added);
    for (int v = 1; v <= res.gg.graph.vertexCount(); ++v) {
        switch (cell.at(res.gg.coordOf(v))) {
        case Cls::Original:
            res.classes[static_cast<size_t>(v)] = VertexClass::Original;
            res.originalIds.push_back(v);
            break;
        case Cls::Auxiliary:
            res.classes[static_cast<size_t>(v)] = VertexClass::Auxiliary;
            break;
        case Cls::Added:
            break;
        }
    }
    for (int v = 1; v <= res.gg.graph.vertexCount(); ++v)
        if (res.gg.graph.degree(v) == 2) res.corners.push_back(v);

    // sanity: the directional edges must all be realized by the induced build
    for (auto [a, b] : extraEdges) {
        int va = *res.gg.vertexAt(a), vb = *res.gg.vertexAt(b);
        if (!res.gg.graph.adjacent(va, vb))
            fail(Errc::PlacementConflict, "internal: expected edge " + coordStr(a) + "-" +
                                              coordStr(b) + " missing");
    }
    return res;
}

void auditReduction(const ReductionResult& r) {
    const Graph& g = r.gg.graph;
    if (g.maxDegree() > 3) fail(Errc::BadInput, "reduction output has degree > 3");
    std::string why;
    if (!validateGrid(r.gg, &why)) fail(Errc::BadInput, "reduction output not a grid graph: " + why);

    std::vector<int> originals;
    for (int v = 1; v <= g.vertexCount(); ++v) {
        VertexClass c = r.classes[static_cast<size_t>(v)];
        if (c == VertexClass::Original) {
            originals.push_back(v);
            if (g.degree(v) != 3)
                fail(Errc::BadInput, "original vertex " + std::to_string(v) + " has degree " +
                                         std::to_string(g.degree(v)));
        } else if (c == VertexClass::Auxiliary) {
            int origNbrs = 0;
            for (int w : g.neighbors(v))
                if (r.classes[static_cast<size_t>(w)] == VertexClass::Original) ++origNbrs;
            if (origNbrs != 1)
                fail(Errc::BadInput, "auxiliary vertex " + std::to_string(v) + " touches " +
                                         std::to_string(origNbrs) + " originals");
            if (g.degree(v) != 3)
                fail(Errc::BadInput, "auxiliary vertex " + std::to_string(v) + " has degree " +
                                         std::to_string(g.degree(v)));
        }
    }

    // corners (degree-2 vertices) pair off with originals at distance 2
    std::vector<int> matchedOriginal;
    for (int c : r.corners) {
        if (g.degree(c) != 2) fail(Errc::BadInput, "corner list holds a non-degree-2 vertex");
        auto ballC = neighborhoodWithin(g, c, 2);
        std::vector<int> near;
        for (int o : originals) {
            if (std::binary_search(ballC.begin(), ballC.end(), o) && !g.adjacent(c, o) && o != c)
                near.push_back(o);
        }
        if (near.size() != 1)
            fail(Errc::BadInput, "corner " + std::to_string(c) + " sees " +
                                     std::to_string(near.size()) + " originals at distance 2");
        matchedOriginal.push_back(near[0]);
    }
    std::sort(matchedOriginal.begin(), matchedOriginal.end());
    if (matchedOriginal != originals ||
        std::adjacent_find(matchedOriginal.begin(), matchedOriginal.end()) !=
            matchedOriginal.end())
        fail(Errc::BadInput, "corner <-> original bijection violated");
}

Graph expandWeightedEdges(const WeightedGraph& wg) {
    std::vector<int> verts = wg.vertices();
    std::map<int, int> newId;
    for (int v : verts) newId[v] = static_cast<int>(newId.size()) + 1;
    int next = static_cast<int>(verts.size());
    std::vector<std::pair<int, int>> edges;
    for (int u : verts)
        for (const auto& e : wg.adj[static_cast<size_t>(u)]) {
            const int v = e.to;
            const int w = e.weight;
            if (v < u) continue; // each undirected edge once
            if (w == 1) {
                edges.emplace_back(newId[u], newId[v]);
                continue;
            }
            int prev = newId[u];
            for (int i = 1; i < w; ++i) {
                int mid = ++next;
                int pendant = ++next;
                edges.emplace_back(prev, mid);
                edges.emplace_back(mid, pendant);
                prev = mid;
            }
            edges.emplace_back(prev, newId[v]);
        }
    return Graph(next, edges);
}

GridGraph genLadder(int k) {
    if (k < 1) fail(Errc::BadInput, "ladder needs k >= 1");
    std::vector<GridCoord> cells;
    for (int x = 0; x < k; ++x)
        for (int y = 0; y < 2; ++y) cells.push_back({x, y});
    return buildGridGraph(cells);
}

Graph genRandomMaxDeg(int n, int maxDeg, uint64_t seed) {
    if (n < 1 || maxDeg < 1) fail(Errc::BadInput, "bad random graph parameters");
    std::mt19937_64 rng(seed);
    std::vector<int> deg(static_cast<size_t>(n) + 1, 0);
    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> have;
    auto canAdd = [&](int u, int v) {
        return u != v && deg[static_cast<size_t>(u)] < maxDeg &&
               deg[static_cast<size_t>(v)] < maxDeg &&
               !have.count({std::min(u, v), std::max(u, v)});
    };
    auto add = [&](int u, int v) {
        edges.emplace_back(u, v);
        have.insert({std::min(u, v), std::max(u, v)});
        ++deg[static_cast<size_t>(u)];
        ++deg[static_cast<size_t>(v)];
    };
    // random spanning tree respecting the degree bound
    for (int v = 2; v <= n; ++v) {
        std::vector<int> hosts;
        for (int u = 1; u < v; ++u)
            if (deg[static_cast<size_t>(u)] < maxDeg) hosts.push_back(u);
        if (hosts.empty()) fail(Errc::BadInput, "degree bound too tight for a spanning tree");
        add(hosts[std::uniform_int_distribution<size_t>(0, hosts.size() - 1)(rng)], v);
    }
    // sprinkle extra edges up to a random target
    int extraTarget = n > 2 ? std::uniform_int_distribution<int>(0, n)(rng) : 0;
    for (int tries = 0; tries < 20 * extraTarget; ++tries) {
        if (extraTarget == 0) break;
        int u = std::uniform_int_distribution<int>(1, n)(rng);
        int v = std::uniform_int_distribution<int>(1, n)(rng);
        if (canAdd(u, v)) {
            add(u, v);
            --extraTarget;
        }
    }
    return Graph(n, edges);
}

GridGraph genRandomGrid(int w, int h, double density, uint64_t seed) {
    if (w < 1 || h < 1 || density <= 0.0 || density > 1.0)
        fail(Errc::BadInput, "bad random grid parameters");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(density);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<GridCoord> cells;
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < h; ++y)
                if (keep(rng)) cells.push_back({x, y});
        if (cells.empty()) continue;
        GridGraph gg = buildGridGraph(cells);
        if (gg.graph.connected()) return gg;
    }
    fail(Errc::BadInput, "could not sample a connected grid at this density");
}

namespace {

using Shape = std::vector<GridCoord>; // sorted, translated to min (0,0)

Shape normalize(Shape s) {
    int mx = s[0].x, my = s[0].y;
    for (auto c : s) {
        mx = std::min(mx, c.x);
        my = std::min(my, c.y);
    }
    for (auto& c : s) {
        c.x -= mx;
        c.y -= my;
    }
    std::sort(s.begin(), s.end());
    return s;
}

Shape canonical(const Shape& s, bool symmetries) {
    Shape best = normalize(s);
    if (!symmetries) return best;
    Shape cur = s;
    for (int refl = 0; refl < 2; ++refl) {
        for (int rot = 0; rot < 4; ++rot) {
            for (auto& c : cur) c = {-c.y, c.x};
            Shape cand = normalize(cur);
            if (cand < best) best = cand;
        }
        for (auto& c : cur) c = {c.y, c.x};
    }
    return best;
}

std::string shapeKey(const Shape& s) {
    std::string key;
    for (auto c : s) {
        key += std::to_string(c.x);
        key += ',';
        key += std::to_string(c.y);
        key += ';';
    }
    return key;
}

} // namespace

void enumerateGridGraphs(int maxVertices, bool dedupSymmetries,
                         const std::function<void(const GridGraph&)>& emit) {
    if (maxVertices < 1) return;
    std::vector<Shape> level{{{0, 0}}};
    std::unordered_set<std::string> seen{shapeKey(level[0])};
    auto emitShape = [&](const Shape& s) {
        std::vector<GridCoord> cells(s.begin(), s.end());
        emit(buildGridGraph(cells));
    };
    emitShape(level[0]);
    for (int size = 2; size <= maxVertices; ++size) {
        std::vector<Shape> nextLevel;
        std::unordered_set<std::string> nextSeen;
        for (const Shape& s : level) {
            std::set<GridCoord> gs(s.begin(), s.end());
            std::set<GridCoord> frontier;
            for (auto c : s)
                for (GridCoord d : {GridCoord{c.x + 1, c.y}, GridCoord{c.x - 1, c.y},
                                    GridCoord{c.x, c.y + 1}, GridCoord{c.x, c.y - 1}})
                    if (!gs.count(d)) frontier.insert(d);
            for (auto c : frontier) {
                Shape grown = s;
                grown.push_back(c);
                Shape canon = canonical(grown, dedupSymmetries);
                std::string key = shapeKey(canon);
                if (nextSeen.insert(key).second) nextLevel.push_back(canon);
            }
        }
        for (const Shape& s : nextLevel) emitShape(s);
        level = std::move(nextLevel);
    }
}

void genSolidPolyominoes(int maxVertices, const std::function<void(const GridGraph&)>& emit) {
    enumerateGridGraphs(maxVertices, true, [&](const GridGraph& gg) {
        if (gg.graph.maxDegree() <= 3 && validateSolidGrid(gg)) emit(gg);
    });
}

} // namespace perc
