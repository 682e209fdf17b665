#include "perc/treewidth.hpp"
#include "perc/errors.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <fstream>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <sstream>

namespace perc {

int TreeDecomposition::width() const {
    int w = -1;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
    return w;
}

int NiceTreeDecomposition::width() const {
    int w = -1;
    for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
    return w;
}

namespace {

bool setWhy(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

bool isTree(int nodes, const std::vector<std::pair<int, int>>& edges, std::string* why) {
    if (nodes == 0) return setWhy(why, "decomposition has no nodes");
    if (static_cast<int>(edges.size()) != nodes - 1)
        return setWhy(why, "tree must have exactly nodes-1 edges");
    std::vector<std::vector<int>> adj(static_cast<size_t>(nodes));
    for (auto [a, b] : edges) {
        if (a < 0 || a >= nodes || b < 0 || b >= nodes || a == b)
            return setWhy(why, "bad tree edge");
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    std::vector<char> seen(static_cast<size_t>(nodes), 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int cnt = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[static_cast<size_t>(v)])
            if (!seen[static_cast<size_t>(w)]) {
                seen[static_cast<size_t>(w)] = 1;
                ++cnt;
                q.push(w);
            }
    }
    if (cnt != nodes) return setWhy(why, "tree is not connected");
    return true;
}

} // namespace

bool validateDecomposition(const Graph& g, const TreeDecomposition& td, std::string* why) {
    const int n = g.vertexCount();
    if (!isTree(td.nodeCount(), td.edges, why)) return false;
    for (const auto& bag : td.bags) {
        for (int v : bag)
            if (v < 1 || v > n) return setWhy(why, "bag vertex out of range");
        if (!std::is_sorted(bag.begin(), bag.end()) ||
            std::adjacent_find(bag.begin(), bag.end()) != bag.end())
            return setWhy(why, "bags must be sorted and duplicate-free");
    }
    std::vector<std::vector<int>> nodesOf(static_cast<size_t>(n) + 1);
    for (int t = 0; t < td.nodeCount(); ++t)
        for (int v : td.bags[static_cast<size_t>(t)]) nodesOf[static_cast<size_t>(v)].push_back(t);
    for (int v = 1; v <= n; ++v)
        if (nodesOf[static_cast<size_t>(v)].empty())
            return setWhy(why, "vertex " + std::to_string(v) + " is in no bag");
    for (auto [u, v] : g.edges()) {
        bool found = false;
        for (int t : nodesOf[static_cast<size_t>(u)]) {
            const auto& bag = td.bags[static_cast<size_t>(t)];
            if (std::binary_search(bag.begin(), bag.end(), v)) {
                found = true;
                break;
            }
        }
        if (!found)
            return setWhy(why, "edge " + std::to_string(u) + "-" + std::to_string(v) +
                                   " is in no bag");
    }
    // connectivity of {t : v in B_t}
    std::vector<std::vector<int>> adj(static_cast<size_t>(td.nodeCount()));
    for (auto [a, b] : td.edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    for (int v = 1; v <= n; ++v) {
        const auto& nodes = nodesOf[static_cast<size_t>(v)];
        std::set<int> want(nodes.begin(), nodes.end());
        std::queue<int> q;
        q.push(nodes[0]);
        std::set<int> got{nodes[0]};
        while (!q.empty()) {
            int t = q.front();
            q.pop();
            for (int s : adj[static_cast<size_t>(t)])
                if (want.count(s) && !got.count(s)) {
                    got.insert(s);
                    q.push(s);
                }
        }
        if (got.size() != want.size())
            return setWhy(why, "bags containing vertex " + std::to_string(v) +
                                   " do not form a subtree");
    }
    return true;
}

TreeDecomposition minDegreeDecomposition(const Graph& g) {
    const int n = g.vertexCount();
    TreeDecomposition td;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<int>> fill(static_cast<size_t>(n) + 1);
    for (int v = 1; v <= n; ++v) {
        const auto& nb = g.neighbors(v);
        fill[static_cast<size_t>(v)] = std::set<int>(nb.begin(), nb.end());
    }
    std::vector<char> gone(static_cast<size_t>(n) + 1, 0);
    std::vector<int> elimOrder;
    std::vector<std::vector<int>> bags;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 1; v <= n; ++v)
            if (!gone[static_cast<size_t>(v)] &&
                (best == -1 ||
                 fill[static_cast<size_t>(v)].size() < fill[static_cast<size_t>(best)].size()))
                best = v;
        std::vector<int> bag{best};
        for (int w : fill[static_cast<size_t>(best)]) bag.push_back(w);
        std::sort(bag.begin(), bag.end());
        bags.push_back(bag);
        elimOrder.push_back(best);
        gone[static_cast<size_t>(best)] = 1;
        const auto& nb = fill[static_cast<size_t>(best)];
        for (int a : nb)
            for (int b : nb)
                if (a < b) {
                    fill[static_cast<size_t>(a)].insert(b);
                    fill[static_cast<size_t>(b)].insert(a);
                }
        for (int a : nb) fill[static_cast<size_t>(a)].erase(best);
    }
    std::vector<int> stepOf(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) stepOf[static_cast<size_t>(elimOrder[static_cast<size_t>(i)])] = i;
    td.bags = bags;
    for (int i = 0; i < n; ++i) {
        int parent = -1;
        for (int v : bags[static_cast<size_t>(i)]) {
            int s = stepOf[static_cast<size_t>(v)];
            if (s > i && (parent == -1 || s < parent)) parent = s;
        }
        if (parent != -1) td.edges.emplace_back(i, parent);
    }
    // disconnected graphs leave a forest; chain the roots to keep a tree
    std::vector<char> hasParent(static_cast<size_t>(n), 0);
    for (auto [a, b] : td.edges) hasParent[static_cast<size_t>(a)] = 1;
    int prevRoot = -1;
    for (int i = 0; i < n; ++i)
        if (!hasParent[static_cast<size_t>(i)]) {
            if (prevRoot != -1) td.edges.emplace_back(prevRoot, i);
            prevRoot = i;
        }
    return td;
}

TreeDecomposition parseTd(std::istream& in) {
    std::string line;
    int bagCount = -1, maxBagSize = -1, n = -1;
    std::vector<std::vector<int>> bags;
    std::vector<std::pair<int, int>> edges;
    std::vector<char> seenBag;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        auto ctx = [&] { return " (line " + std::to_string(lineno) + ")"; };
        if (tag == "c") continue;
        if (tag == "s") {
            std::string kind;
            if (!(ls >> kind >> bagCount >> maxBagSize >> n) || kind != "td" || bagCount < 0)
                fail(Errc::BadInput, "malformed s-line in .td file" + ctx());
            bags.assign(static_cast<size_t>(bagCount), {});
            seenBag.assign(static_cast<size_t>(bagCount), 0);
        } else if (tag == "b") {
            if (bagCount < 0) fail(Errc::BadInput, "b-line before s-line" + ctx());
            int id;
            if (!(ls >> id) || id < 1 || id > bagCount)
                fail(Errc::BadInput, "bad bag id in .td file" + ctx());
            if (seenBag[static_cast<size_t>(id - 1)])
                fail(Errc::BadInput, "duplicate bag id in .td file" + ctx());
            seenBag[static_cast<size_t>(id - 1)] = 1;
            int v;
            while (ls >> v) bags[static_cast<size_t>(id - 1)].push_back(v);
            auto& bag = bags[static_cast<size_t>(id - 1)];
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        } else {
            if (bagCount < 0) fail(Errc::BadInput, "edge line before s-line" + ctx());
            int a = 0, b = 0;
            std::istringstream es(line);
            if (!(es >> a >> b) || a < 1 || a > bagCount || b < 1 || b > bagCount)
                fail(Errc::BadInput, "bad tree edge in .td file" + ctx());
            edges.emplace_back(a - 1, b - 1);
        }
    }
    if (bagCount < 0) fail(Errc::BadInput, ".td file has no s-line");
    for (int i = 0; i < bagCount; ++i)
        if (!seenBag[static_cast<size_t>(i)])
            fail(Errc::BadInput, "missing bag " + std::to_string(i + 1) + " in .td file");
    TreeDecomposition td;
    td.bags = std::move(bags);
    td.edges = std::move(edges);
    return td;
}

TreeDecomposition parseTdFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadInput, "cannot open .td file " + path);
    return parseTd(in);
}

void writeTd(std::ostream& out, const TreeDecomposition& td, int n) {
    out << "s td " << td.nodeCount() << " " << td.width() + 1 << " " << n << "\n";
    for (int i = 0; i < td.nodeCount(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[static_cast<size_t>(i)]) out << " " << v;
        out << "\n";
    }
    for (auto [a, b] : td.edges) out << a + 1 << " " << b + 1 << "\n";
}

namespace {

std::vector<int> sortedMinus(const std::vector<int>& a, int v) {
    std::vector<int> out;
    for (int x : a)
        if (x != v) out.push_back(x);
    return out;
}

std::vector<int> sortedPlus(const std::vector<int>& a, int v) {
    std::vector<int> out = a;
    out.insert(std::lower_bound(out.begin(), out.end(), v), v);
    return out;
}

} // namespace

NiceTreeDecomposition niceify(const Graph& g, const TreeDecomposition& td) {
    std::string why;
    if (!validateDecomposition(g, td, &why))
        fail(Errc::InvalidDecomposition, "invalid tree decomposition: " + why);

    NiceTreeDecomposition ntd;
    using Kind = NiceTreeDecomposition::Kind;
    auto addNode = [&](Kind kind, int vertex, std::vector<int> bag, int c1, int c2) {
        ntd.nodes.push_back({kind, vertex, std::move(bag), c1, c2});
        return static_cast<int>(ntd.nodes.size()) - 1;
    };

    // leaf holding at most one vertex, then introduces for the rest
    auto leafChain = [&](const std::vector<int>& bag) {
        std::vector<int> cur;
        if (!bag.empty()) cur.push_back(bag[0]);
        int id = addNode(Kind::Leaf, 0, cur, -1, -1);
        for (size_t i = 1; i < bag.size(); ++i) {
            cur = sortedPlus(cur, bag[i]);
            id = addNode(Kind::Introduce, bag[i], cur, id, -1);
        }
        return id;
    };

    // from a node whose bag is `from`, forget/introduce one vertex at a time
    // until the bag equals `to`
    auto transitionChain = [&](int id, const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> cur = from;
        for (int v : from)
            if (!std::binary_search(to.begin(), to.end(), v)) {
                cur = sortedMinus(cur, v);
                id = addNode(Kind::Forget, v, cur, id, -1);
            }
        for (int v : to)
            if (!std::binary_search(cur.begin(), cur.end(), v)) {
                cur = sortedPlus(cur, v);
                id = addNode(Kind::Introduce, v, cur, id, -1);
            }
        return id;
    };

    std::vector<std::vector<int>> adj(static_cast<size_t>(td.nodeCount()));
    for (auto [a, b] : td.edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }

    std::function<int(int, int)> build = [&](int node, int parent) -> int {
        const auto& bag = td.bags[static_cast<size_t>(node)];
        std::vector<int> kids;
        for (int c : adj[static_cast<size_t>(node)])
            if (c != parent) kids.push_back(c);
        if (kids.empty()) return leafChain(bag);
        int acc = -1;
        for (int c : kids) {
            int sub = build(c, node);
            int lifted = transitionChain(sub, td.bags[static_cast<size_t>(c)], bag);
            acc = acc < 0 ? lifted : addNode(Kind::Join, 0, bag, acc, lifted);
        }
        return acc;
    };
    ntd.root = build(0, -1);
    return ntd;
}

bool validateNice(const Graph& g, const NiceTreeDecomposition& ntd, std::string* why) {
    using Kind = NiceTreeDecomposition::Kind;
    TreeDecomposition flat;
    for (const auto& nd : ntd.nodes) flat.bags.push_back(nd.bag);
    for (int i = 0; i < static_cast<int>(ntd.nodes.size()); ++i) {
        const auto& nd = ntd.nodes[static_cast<size_t>(i)];
        if (nd.child1 >= 0) flat.edges.emplace_back(i, nd.child1);
        if (nd.child2 >= 0) flat.edges.emplace_back(i, nd.child2);
        switch (nd.kind) {
        case Kind::Leaf:
            if (nd.child1 != -1 || nd.child2 != -1 || nd.bag.size() > 1)
                return setWhy(why, "leaf node must be childless with at most one vertex");
            break;
        case Kind::Introduce: {
            if (nd.child1 < 0 || nd.child2 != -1) return setWhy(why, "introduce needs one child");
            auto child = ntd.nodes[static_cast<size_t>(nd.child1)].bag;
            if (sortedPlus(child, nd.vertex) != nd.bag)
                return setWhy(why, "introduce must add exactly its vertex");
            break;
        }
        case Kind::Forget: {
            if (nd.child1 < 0 || nd.child2 != -1) return setWhy(why, "forget needs one child");
            auto child = ntd.nodes[static_cast<size_t>(nd.child1)].bag;
            if (sortedMinus(child, nd.vertex) != nd.bag ||
                !std::binary_search(child.begin(), child.end(), nd.vertex))
                return setWhy(why, "forget must remove exactly its vertex");
            break;
        }
        case Kind::Join:
            if (nd.child1 < 0 || nd.child2 < 0) return setWhy(why, "join needs two children");
            if (ntd.nodes[static_cast<size_t>(nd.child1)].bag != nd.bag ||
                ntd.nodes[static_cast<size_t>(nd.child2)].bag != nd.bag)
                return setWhy(why, "join children must repeat the bag");
            break;
        }
    }
    if (ntd.root < 0 || ntd.root >= static_cast<int>(ntd.nodes.size()))
        return setWhy(why, "bad root");
    return validateDecomposition(g, flat, why);
}

namespace {

using Kind = NiceTreeDecomposition::Kind;

int statusA(Status s) { return s == Status::O1 || s == Status::T1 ? 1 : 0; }
int statusBlo(Status s) {
    switch (s) {
    case Status::Z:
    case Status::O1:
        return 0;
    case Status::O2:
    case Status::T1:
        return 1;
    case Status::T2:
        return 2;
    }
    return 0;
}
uint64_t shr64(uint64_t x, size_t s) { return s >= 64 ? 0 : x >> s; }
uint64_t shl64(uint64_t x, size_t s) { return s >= 64 ? 0 : x << s; }
bool statusElastic(Status s) { return s == Status::T1 || s == Status::T2; }

std::optional<Status> statusFromCounts(int a, int b) {
    if (a >= 2) return std::nullopt; // more than one neighbour before p(v)-1
    if (a == 1) return b == 0 ? Status::O1 : Status::T1;
    if (b == 0) return Status::Z;
    if (b == 1) return Status::O2;
    return Status::T2;
}

// New earlier neighbour for a bag vertex when `v` is introduced below it;
// aContrib = the new neighbour is infected before p(r)-1.
std::optional<Status> statusUpgrade(Status s, bool aContrib) {
    if (aContrib) {
        switch (s) {
        case Status::Z:
            return Status::O1;
        case Status::O2:
        case Status::T2:
            return Status::T1;
        default:
            return std::nullopt; // would give two neighbours before p(r)-1
        }
    }
    switch (s) {
    case Status::Z:
        return Status::O2;
    case Status::O1:
    case Status::T1:
        return Status::T1;
    case Status::O2:
    case Status::T2:
        return Status::T2;
    }
    return std::nullopt;
}

// Status of r in the union graph of a join, given its statuses in the two
// children and the counts contributed by bag neighbours (visible to both).
std::optional<Status> statusCombine(Status s1, Status s2, int aB, int bB) {
    if (statusA(s1) < aB || statusA(s2) < aB) return std::nullopt;
    int a = statusA(s1) + statusA(s2) - aB;
    if (a > 1) return std::nullopt;
    auto bhiOk = [&](Status s) { return statusElastic(s) || statusBlo(s) >= bB; };
    if (!bhiOk(s1) || !bhiOk(s2)) return std::nullopt;
    bool elastic = statusElastic(s1) || statusElastic(s2);
    int blo = std::max(statusBlo(s1), bB) + std::max(statusBlo(s2), bB) - bB;
    if (a == 1) {
        if (!elastic && blo == 0) return Status::O1;
        return Status::T1; // blo >= 1 whenever any side is elastic
    }
    if (elastic) return Status::T2; // blo >= 2 whenever any side is elastic
    if (blo == 0) return Status::Z;
    if (blo == 1) return Status::O2;
    return Status::T2;
}

} // namespace

TreewidthDP::TreewidthDP(const Graph& g, NiceTreeDecomposition ntd, int timeCap)
    : g_(g), ntd_(std::move(ntd)), timeCap_(std::max(timeCap, 0)) {
    int slotRange = 5 * (timeCap_ + 1);
    bitsPerSlot_ = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(slotRange - 1))));
    int maxBag = ntd_.width() + 1;
    if (maxBag * bitsPerSlot_ > 64)
        fail(Errc::CapExceeded, "DP index does not fit 64 bits (bag " + std::to_string(maxBag) +
                                    ", time cap " + std::to_string(timeCap_) + ")");
}

uint64_t TreewidthDP::encode(const std::vector<int>& bag, const DPIndex& idx) const {
    uint64_t key = 0;
    for (size_t i = 0; i < bag.size(); ++i) {
        uint64_t slot = static_cast<uint64_t>(idx.p[i]) * 5 + static_cast<uint64_t>(idx.f[i]);
        key |= slot << (i * static_cast<size_t>(bitsPerSlot_));
    }
    return key;
}

DPIndex TreewidthDP::decode(const std::vector<int>& bag, uint64_t key) const {
    DPIndex idx;
    idx.p.resize(bag.size());
    idx.f.resize(bag.size());
    uint64_t mask = (bitsPerSlot_ == 64) ? ~0ULL : ((1ULL << bitsPerSlot_) - 1);
    for (size_t i = 0; i < bag.size(); ++i) {
        uint64_t slot = (key >> (i * static_cast<size_t>(bitsPerSlot_))) & mask;
        idx.p[i] = static_cast<int>(slot / 5);
        idx.f[i] = static_cast<int>(slot % 5);
    }
    return idx;
}

bool TreewidthDP::validIndex(int node, const DPIndex& idx) const {
    const auto& bag = ntd_.nodes[static_cast<size_t>(node)].bag;
    const size_t b = bag.size();
    for (size_t i = 0; i < b; ++i) {
        int pv = idx.p[i];
        Status f = static_cast<Status>(idx.f[i]);
        int earlier = 0, before = 0, atPrev = 0;
        for (size_t j = 0; j < b; ++j) {
            if (j == i || !g_.adjacent(bag[i], bag[j])) continue;
            if (idx.p[j] < pv) ++earlier;
            if (idx.p[j] < pv - 1) ++before;
            if (idx.p[j] == pv - 1) ++atPrev;
        }
        switch (f) {
        case Status::Z:
            if (earlier > 0) return false;
            break;
        case Status::O1:
            if (earlier > 1 || (earlier == 1 && before != 1)) return false;
            break;
        case Status::O2:
            if (earlier > 1 || (earlier == 1 && atPrev != 1)) return false;
            break;
        case Status::T1:
            if (before > 1) return false;
            break;
        case Status::T2:
            if (before > 0) return false;
            break;
        }
        if (ntd_.nodes[static_cast<size_t>(node)].kind == Kind::Leaf) {
            // at a leaf G_t = G[B_t], so the status is fully determined
            auto exact = statusFromCounts(before, atPrev);
            if (!exact || *exact != f) return false;
        }
    }
    return true;
}

DPTable TreewidthDP::leafTable(int node) const {
    const auto& bag = ntd_.nodes[static_cast<size_t>(node)].bag;
    const size_t b = bag.size();
    DPTable table;
    if (b == 0) {
        table[0] = 0;
        return table;
    }
    DPIndex idx;
    idx.p.assign(b, 0);
    idx.f.assign(b, 0);
    while (true) {
        bool ok = true;
        int maxp = 0;
        for (size_t i = 0; i < b && ok; ++i) {
            int before = 0, atPrev = 0;
            for (size_t j = 0; j < b; ++j) {
                if (j == i || !g_.adjacent(bag[i], bag[j])) continue;
                if (idx.p[j] < idx.p[i] - 1) ++before;
                if (idx.p[j] == idx.p[i] - 1) ++atPrev;
            }
            auto st = statusFromCounts(before, atPrev);
            if (!st) {
                ok = false;
                break;
            }
            idx.f[i] = static_cast<int>(*st);
            maxp = std::max(maxp, idx.p[i]);
        }
        if (ok) table[encode(bag, idx)] = maxp;
        // odometer over p
        size_t i = 0;
        while (i < b && idx.p[i] == timeCap_) idx.p[i++] = 0;
        if (i == b) break;
        ++idx.p[i];
    }
    return table;
}

DPTable TreewidthDP::introduceTable(int node, const DPTable& child) const {
    const auto& nd = ntd_.nodes[static_cast<size_t>(node)];
    const auto& bag = nd.bag;
    const auto& childBag = ntd_.nodes[static_cast<size_t>(nd.child1)].bag;
    const int v = nd.vertex;
    const size_t pos = static_cast<size_t>(
        std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());

    std::vector<char> isNbr(childBag.size(), 0);
    for (size_t j = 0; j < childBag.size(); ++j)
        isNbr[j] = g_.adjacent(v, childBag[j]) ? 1 : 0;

    DPTable table;
    for (const auto& [ckey, cval] : child) {
        DPIndex cidx = decode(childBag, ckey);
        for (int pv = 0; pv <= timeCap_; ++pv) {
            // status of v itself: all of its G_t neighbours are in the bag
            int before = 0, atPrev = 0;
            for (size_t j = 0; j < childBag.size(); ++j) {
                if (!isNbr[j]) continue;
                if (cidx.p[j] < pv - 1) ++before;
                if (cidx.p[j] == pv - 1) ++atPrev;
            }
            auto sv = statusFromCounts(before, atPrev);
            if (!sv) continue;
            // upgrade statuses of neighbours that v is now infected before
            DPIndex nidx;
            nidx.p.reserve(bag.size());
            nidx.f.reserve(bag.size());
            bool ok = true;
            for (size_t j = 0; j <= childBag.size() && ok; ++j) {
                if (j == pos) {
                    nidx.p.push_back(pv);
                    nidx.f.push_back(static_cast<int>(*sv));
                }
                if (j == childBag.size()) break;
                int fj = cidx.f[j];
                if (isNbr[j] && cidx.p[j] > pv) {
                    auto up = statusUpgrade(static_cast<Status>(fj), pv < cidx.p[j] - 1);
                    if (!up) {
                        ok = false;
                        break;
                    }
                    fj = static_cast<int>(*up);
                }
                nidx.p.push_back(cidx.p[j]);
                nidx.f.push_back(fj);
            }
            if (!ok) continue;
            uint64_t key = encode(bag, nidx);
            int val = std::max(pv, cval);
            auto [it, fresh] = table.emplace(key, val);
            if (!fresh) it->second = std::max(it->second, val);
        }
    }
    return table;
}

DPTable TreewidthDP::forgetTable(int node, const DPTable& child) const {
    const auto& nd = ntd_.nodes[static_cast<size_t>(node)];
    const auto& childBag = ntd_.nodes[static_cast<size_t>(nd.child1)].bag;
    const int v = nd.vertex;
    const size_t pos = static_cast<size_t>(
        std::lower_bound(childBag.begin(), childBag.end(), v) - childBag.begin());
    const uint64_t lowMask = (1ULL << (pos * static_cast<size_t>(bitsPerSlot_))) - 1;
    const uint64_t slotMask = (1ULL << bitsPerSlot_) - 1;

    DPTable table;
    for (const auto& [ckey, cval] : child) {
        uint64_t slot = (ckey >> (pos * static_cast<size_t>(bitsPerSlot_))) & slotMask;
        int pv = static_cast<int>(slot / 5);
        Status fv = static_cast<Status>(slot % 5);
        // forgotten vertices must be fully justified: seeded or two-infected
        if (pv != 0 && fv != Status::T1 && fv != Status::T2) continue;
        uint64_t key = (ckey & lowMask) |
                       (shr64(ckey, (pos + 1) * static_cast<size_t>(bitsPerSlot_))
                        << (pos * static_cast<size_t>(bitsPerSlot_)));
        auto [it, fresh] = table.emplace(key, cval);
        if (!fresh) it->second = std::max(it->second, cval);
    }
    return table;
}

DPTable TreewidthDP::joinTable(int node, const DPTable& left, const DPTable& right) const {
    const auto& bag = ntd_.nodes[static_cast<size_t>(node)].bag;
    const size_t b = bag.size();

    auto pKeyOf = [&](uint64_t key) {
        DPIndex idx = decode(bag, key);
        DPIndex p0 = idx;
        std::fill(p0.f.begin(), p0.f.end(), 0);
        return encode(bag, p0);
    };
    using Bucket = std::vector<std::pair<uint64_t, int>>;
    std::unordered_map<uint64_t, Bucket> lb, rb;
    for (const auto& [k, w] : left) lb[pKeyOf(k)].emplace_back(k, w);
    for (const auto& [k, w] : right) rb[pKeyOf(k)].emplace_back(k, w);

    DPTable table;
    std::vector<int> aB(b, 0), bB(b, 0);
    for (auto& [pkey, lvec] : lb) {
        auto rit = rb.find(pkey);
        if (rit == rb.end()) continue;
        DPIndex pidx = decode(bag, pkey);
        for (size_t i = 0; i < b; ++i) {
            aB[i] = bB[i] = 0;
            for (size_t j = 0; j < b; ++j) {
                if (j == i || !g_.adjacent(bag[i], bag[j])) continue;
                if (pidx.p[j] < pidx.p[i] - 1) ++aB[i];
                if (pidx.p[j] == pidx.p[i] - 1) ++bB[i];
            }
        }
        for (const auto& [k1, w1] : lvec)
            for (const auto& [k2, w2] : rit->second) {
                DPIndex i1 = decode(bag, k1);
                DPIndex i2 = decode(bag, k2);
                DPIndex out = pidx;
                bool ok = true;
                for (size_t i = 0; i < b && ok; ++i) {
                    auto s = statusCombine(static_cast<Status>(i1.f[i]),
                                           static_cast<Status>(i2.f[i]), aB[i], bB[i]);
                    if (!s)
                        ok = false;
                    else
                        out.f[i] = static_cast<int>(*s);
                }
                if (!ok) continue;
                uint64_t key = encode(bag, out);
                int val = std::max(w1, w2);
                auto [it, fresh] = table.emplace(key, val);
                if (!fresh) it->second = std::max(it->second, val);
            }
    }
    return table;
}

void TreewidthDP::run() {
    const int count = static_cast<int>(ntd_.nodes.size());
    tables_.assign(static_cast<size_t>(count), {});
    // children come before parents in construction order
    for (int id = 0; id < count; ++id) {
        const auto& nd = ntd_.nodes[static_cast<size_t>(id)];
        switch (nd.kind) {
        case Kind::Leaf:
            tables_[static_cast<size_t>(id)] = leafTable(id);
            break;
        case Kind::Introduce:
            tables_[static_cast<size_t>(id)] =
                introduceTable(id, tables_[static_cast<size_t>(nd.child1)]);
            break;
        case Kind::Forget:
            tables_[static_cast<size_t>(id)] =
                forgetTable(id, tables_[static_cast<size_t>(nd.child1)]);
            break;
        case Kind::Join:
            tables_[static_cast<size_t>(id)] = joinTable(
                id, tables_[static_cast<size_t>(nd.child1)], tables_[static_cast<size_t>(nd.child2)]);
            break;
        }
        // W_t has at most 5^|B| (cap+1)^|B| indexes
        const size_t b = nd.bag.size();
        double bound = 1;
        for (size_t i = 0; i < b; ++i) bound *= 5.0 * (timeCap_ + 1);
        assert(static_cast<double>(tables_[static_cast<size_t>(id)].size()) <= bound);
    }
}

int TreewidthDP::rootMax() const {
    const auto& bag = ntd_.nodes[static_cast<size_t>(ntd_.root)].bag;
    int best = -1;
    for (const auto& [key, val] : tables_[static_cast<size_t>(ntd_.root)]) {
        DPIndex idx = decode(bag, key);
        bool ok = true;
        for (size_t i = 0; i < bag.size() && ok; ++i)
            ok = idx.p[i] == 0 || idx.f[i] == static_cast<int>(Status::T1) ||
                 idx.f[i] == static_cast<int>(Status::T2);
        if (ok) best = std::max(best, val);
    }
    return best;
}

TreewidthDP::Witness TreewidthDP::reconstructWitness() const {
    Witness wit;
    wit.times.assign(static_cast<size_t>(g_.vertexCount()) + 1, -1);

    const auto& rootBag = ntd_.nodes[static_cast<size_t>(ntd_.root)].bag;
    uint64_t bestKey = 0;
    int bestVal = -1;
    for (const auto& [key, val] : tables_[static_cast<size_t>(ntd_.root)]) {
        DPIndex idx = decode(rootBag, key);
        bool ok = true;
        for (size_t i = 0; i < rootBag.size() && ok; ++i)
            ok = idx.p[i] == 0 || idx.f[i] == static_cast<int>(Status::T1) ||
                 idx.f[i] == static_cast<int>(Status::T2);
        if (!ok) continue;
        if (val > bestVal || (val == bestVal && key < bestKey)) {
            bestVal = val;
            bestKey = key;
        }
    }
    if (bestVal < 0) fail(Errc::InvalidDecomposition, "no admissible root index");
    wit.t = bestVal;

    auto record = [&](const std::vector<int>& bag, const DPIndex& idx) {
        for (size_t i = 0; i < bag.size(); ++i) {
            int& slot = wit.times[static_cast<size_t>(bag[i])];
            if (slot != -1 && slot != idx.p[i])
                fail(Errc::InvalidDecomposition, "inconsistent reconstruction");
            slot = idx.p[i];
        }
    };

    std::function<void(int, uint64_t, int)> walk = [&](int node, uint64_t key, int value) {
        const auto& nd = ntd_.nodes[static_cast<size_t>(node)];
        const auto& bag = nd.bag;
        DPIndex idx = decode(bag, key);
        record(bag, idx);
        switch (nd.kind) {
        case Kind::Leaf:
            return;
        case Kind::Forget: {
            const auto& childBag = ntd_.nodes[static_cast<size_t>(nd.child1)].bag;
            const auto& child = tables_[static_cast<size_t>(nd.child1)];
            size_t pos = static_cast<size_t>(
                std::lower_bound(childBag.begin(), childBag.end(), nd.vertex) - childBag.begin());
            uint64_t low = key & ((1ULL << (pos * static_cast<size_t>(bitsPerSlot_))) - 1);
            uint64_t high = shr64(key, pos * static_cast<size_t>(bitsPerSlot_));
            auto tryChild = [&](int pv, Status fv) {
                uint64_t slot = static_cast<uint64_t>(pv) * 5 + static_cast<uint64_t>(fv);
                uint64_t ck = low | (slot << (pos * static_cast<size_t>(bitsPerSlot_))) |
                              shl64(high, (pos + 1) * static_cast<size_t>(bitsPerSlot_));
                auto it = child.find(ck);
                if (it != child.end() && it->second == value) {
                    walk(nd.child1, ck, value);
                    return true;
                }
                return false;
            };
            if (tryChild(0, Status::Z)) return;
            for (int pv = 1; pv <= timeCap_; ++pv)
                for (Status fv : {Status::T1, Status::T2})
                    if (tryChild(pv, fv)) return;
            fail(Errc::InvalidDecomposition, "forget reconstruction failed");
        }
        case Kind::Introduce: {
            const auto& childBag = ntd_.nodes[static_cast<size_t>(nd.child1)].bag;
            const auto& child = tables_[static_cast<size_t>(nd.child1)];
            size_t pos = static_cast<size_t>(
                std::lower_bound(bag.begin(), bag.end(), nd.vertex) - bag.begin());
            int pv = idx.p[pos];
            DPIndex cidx;
            for (size_t i = 0; i < bag.size(); ++i) {
                if (i == pos) continue;
                cidx.p.push_back(idx.p[i]);
                cidx.f.push_back(idx.f[i]);
            }
            // enumerate child statuses of the affected neighbours
            std::vector<size_t> affected;
            std::vector<std::vector<Status>> options;
            for (size_t j = 0; j < childBag.size(); ++j) {
                if (!g_.adjacent(nd.vertex, childBag[j]) || cidx.p[j] <= pv) continue;
                bool aContrib = pv < cidx.p[j] - 1;
                std::vector<Status> opts;
                for (Status s :
                     {Status::Z, Status::O1, Status::O2, Status::T1, Status::T2}) {
                    auto up = statusUpgrade(s, aContrib);
                    if (up && static_cast<int>(*up) == cidx.f[j]) opts.push_back(s);
                }
                affected.push_back(j);
                options.push_back(std::move(opts));
            }
            std::vector<size_t> pick(affected.size(), 0);
            while (true) {
                DPIndex trial = cidx;
                for (size_t i = 0; i < affected.size(); ++i)
                    trial.f[affected[i]] = static_cast<int>(options[i][pick[i]]);
                uint64_t ck = encode(childBag, trial);
                auto it = child.find(ck);
                if (it != child.end() && std::max(pv, it->second) == value) {
                    walk(nd.child1, ck, it->second);
                    return;
                }
                size_t i = 0;
                while (i < pick.size() && pick[i] + 1 == options[i].size()) pick[i++] = 0;
                if (i == pick.size()) break;
                ++pick[i];
            }
            fail(Errc::InvalidDecomposition, "introduce reconstruction failed");
        }
        case Kind::Join: {
            const auto& left = tables_[static_cast<size_t>(nd.child1)];
            const auto& right = tables_[static_cast<size_t>(nd.child2)];
            std::vector<int> aB(bag.size(), 0), bB(bag.size(), 0);
            for (size_t i = 0; i < bag.size(); ++i)
                for (size_t j = 0; j < bag.size(); ++j) {
                    if (j == i || !g_.adjacent(bag[i], bag[j])) continue;
                    if (idx.p[j] < idx.p[i] - 1) ++aB[i];
                    if (idx.p[j] == idx.p[i] - 1) ++bB[i];
                }
            for (const auto& [k1, w1] : left) {
                DPIndex i1 = decode(bag, k1);
                if (i1.p != idx.p) continue;
                for (const auto& [k2, w2] : right) {
                    DPIndex i2 = decode(bag, k2);
                    if (i2.p != idx.p) continue;
                    if (std::max(w1, w2) != value) continue;
                    bool ok = true;
                    for (size_t i = 0; i < bag.size() && ok; ++i) {
                        auto s = statusCombine(static_cast<Status>(i1.f[i]),
                                               static_cast<Status>(i2.f[i]), aB[i], bB[i]);
                        ok = s && static_cast<int>(*s) == idx.f[i];
                    }
                    if (!ok) continue;
                    walk(nd.child1, k1, w1);
                    walk(nd.child2, k2, w2);
                    return;
                }
            }
            fail(Errc::InvalidDecomposition, "join reconstruction failed");
        }
        }
    };
    walk(ntd_.root, bestKey, bestVal);

    for (int v = 1; v <= g_.vertexCount(); ++v) {
        if (wit.times[static_cast<size_t>(v)] < 0)
            fail(Errc::InvalidDecomposition, "reconstruction left vertex unassigned");
        if (wit.times[static_cast<size_t>(v)] == 0) wit.seeds.push_back(v);
    }
    return wit;
}

namespace {

TreewidthDP makeDP(const Graph& g, const TreeDecomposition& td, int timeCap) {
    if (!g.connected())
        fail(Errc::Disconnected, "treewidth solver requires a connected graph");
    NiceTreeDecomposition ntd = niceify(g, td);
    return TreewidthDP(g, std::move(ntd), timeCap);
}

} // namespace

int maxTimeTreewidth(const Graph& g, const TreeDecomposition& td) {
    if (g.vertexCount() == 0) return 0;
    TreewidthDP dp = makeDP(g, td, g.vertexCount() - 1);
    dp.run();
    return dp.rootMax();
}

bool decideTreewidth(const Graph& g, const TreeDecomposition& td, int k) {
    if (k <= 0) return true;
    if (k > g.vertexCount() - 1) return false; // every round infects a new vertex
    TreewidthDP dp = makeDP(g, td, k);
    dp.run();
    return dp.rootMax() == k;
}

} // namespace perc
