#include "perc/errors.hpp"
#include "perc/generators.hpp"
#include "perc/oracle.hpp"
#include "perc/percolate.hpp"
#include "perc/treewidth.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace perc;
using namespace perc::testutil;

namespace {

TreeDecomposition pathDecomposition(int n) {
    TreeDecomposition td;
    for (int v = 1; v < n; ++v) td.bags.push_back({v, v + 1});
    if (n == 1) td.bags.push_back({1});
    for (int i = 0; i + 1 < td.nodeCount(); ++i) td.edges.emplace_back(i, i + 1);
    return td;
}

// random connected graph whose min-degree decomposition has width <= maxWidth
Graph randomLowWidthGraph(std::mt19937_64& rng, int n, int maxWidth) {
    while (true) {
        std::vector<std::pair<int, int>> es;
        for (int v = 2; v <= n; ++v)
            es.emplace_back(1 + static_cast<int>(rng() % static_cast<uint64_t>(v - 1)), v);
        int extras = static_cast<int>(rng() % 3);
        for (int e = 0; e < extras; ++e) {
            int u = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n));
            int v = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n));
            if (u == v) continue;
            es.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        Graph g(n, es);
        if (minDegreeDecomposition(g).width() <= maxWidth) return g;
    }
}

} // namespace

TEST_CASE("validateDecomposition") {
    Graph p4 = pathGraph(4);
    TreeDecomposition td = pathDecomposition(4);
    CHECK(validateDecomposition(p4, td));

    TreeDecomposition missingEdge = td;
    missingEdge.bags[1] = {2}; // edge 2-3 no longer covered
    CHECK_FALSE(validateDecomposition(p4, missingEdge));

    TreeDecomposition split = td;
    split.edges.clear(); // not a tree
    CHECK_FALSE(validateDecomposition(p4, split));

    // bags of a vertex must form a subtree
    TreeDecomposition scattered;
    scattered.bags = {{1, 2}, {2, 3}, {3, 4}, {4, 1}};
    scattered.edges = {{0, 1}, {1, 2}, {2, 3}};
    Graph c4 = cycleGraph(4);
    CHECK_FALSE(validateDecomposition(c4, scattered)); // vertex 1 in bags 0 and 3 only
}

TEST_CASE("minDegreeDecomposition is valid on assorted graphs") {
    for (const Graph& g : {pathGraph(6), cycleGraph(7), q3Graph(), prismGraph(), completeGraph(5)}) {
        TreeDecomposition td = minDegreeDecomposition(g);
        std::string why;
        CHECK_MESSAGE(validateDecomposition(g, td, &why), why);
    }
    CHECK(minDegreeDecomposition(pathGraph(8)).width() == 1);
    CHECK(minDegreeDecomposition(cycleGraph(8)).width() == 2);
    CHECK(minDegreeDecomposition(completeGraph(5)).width() == 4);
}

TEST_CASE("PACE .td round trip") {
    TreeDecomposition td = minDegreeDecomposition(q3Graph());
    std::ostringstream os;
    writeTd(os, td, 8);
    std::istringstream is(os.str());
    TreeDecomposition back = parseTd(is);
    CHECK(back.bags == td.bags);
    // edge set equality up to orientation/order
    auto norm = [](TreeDecomposition t) {
        for (auto& [a, b] : t.edges)
            if (a > b) std::swap(a, b);
        std::sort(t.edges.begin(), t.edges.end());
        return t.edges;
    };
    CHECK(norm(back) == norm(td));

    std::istringstream bad("b 1 1 2\n");
    CHECK_THROWS_AS(parseTd(bad), PercError);
    std::istringstream bad2("s td 2 2 3\nb 1 1 2\nb 1 2 3\n1 2\n");
    CHECK_THROWS_AS(parseTd(bad2), PercError); // duplicate bag id
}

TEST_CASE("niceify structure") {
    // single bag of a triangle -> a chain of introduces above a leaf
    Graph k3 = completeGraph(3);
    TreeDecomposition single;
    single.bags = {{1, 2, 3}};
    NiceTreeDecomposition ntd = niceify(k3, single);
    CHECK(validateNice(k3, ntd));
    CHECK(ntd.width() == single.width());
    int introduces = 0, leaves = 0;
    for (const auto& nd : ntd.nodes) {
        if (nd.kind == NiceTreeDecomposition::Kind::Introduce) ++introduces;
        if (nd.kind == NiceTreeDecomposition::Kind::Leaf) ++leaves;
    }
    CHECK(leaves == 1);
    CHECK(introduces == 2);

    // path decomposition of P4: forget/introduce alternation, width unchanged
    Graph p4 = pathGraph(4);
    NiceTreeDecomposition np = niceify(p4, pathDecomposition(4));
    CHECK(validateNice(p4, np));
    CHECK(np.width() == 1);

    CHECK_THROWS_AS(niceify(p4, TreeDecomposition{}), PercError);
}

TEST_CASE("niceify property: valid nice decompositions from random trees") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 6);
        Graph g = randomLowWidthGraph(rng, n, 3);
        TreeDecomposition td = minDegreeDecomposition(g);
        NiceTreeDecomposition ntd = niceify(g, td);
        std::string why;
        CHECK_MESSAGE(validateNice(g, ntd, &why), why);
        CHECK(ntd.width() <= td.width());
    }
}

TEST_CASE("validIndex bullets") {
    // bag {u=1, v=2} with edge uv inside a larger host graph
    Graph p3 = pathGraph(3);
    TreeDecomposition td;
    td.bags = {{1, 2}, {2, 3}};
    td.edges = {{0, 1}};
    NiceTreeDecomposition ntd = niceify(p3, td);
    TreewidthDP dp(p3, ntd, 2);

    // locate a leaf node with bag {1,2} and a non-leaf with the same bag
    int leafNode = -1, innerNode = -1;
    for (int i = 0; i < static_cast<int>(dp.nice().nodes.size()); ++i) {
        const auto& nd = dp.nice().nodes[static_cast<size_t>(i)];
        if (nd.bag == std::vector<int>{1, 2}) {
            if (nd.kind == NiceTreeDecomposition::Kind::Leaf)
                leafNode = i;
            else
                innerNode = i;
        }
    }
    // niceify reduces leaves to single vertices, so build the checks on
    // whatever node carries the full bag
    int node = innerNode >= 0 ? innerNode : leafNode;
    REQUIRE(node >= 0);

    using S = Status;
    DPIndex ok{{0, 1}, {static_cast<int>(S::Z), static_cast<int>(S::O2)}};
    CHECK(dp.validIndex(node, ok));
    DPIndex bad{{1, 0}, {static_cast<int>(S::Z), static_cast<int>(S::Z)}};
    // f(1) = z but p(2) = 0 < 1 = p(1)
    CHECK_FALSE(dp.validIndex(node, bad));
}

TEST_CASE("leaf count-exactness and leaf tables") {
    Graph p2 = pathGraph(2);
    TreeDecomposition td;
    td.bags = {{1, 2}};
    NiceTreeDecomposition flat;
    flat.nodes.push_back({NiceTreeDecomposition::Kind::Leaf, 0, {1, 2}, -1, -1});
    flat.root = 0;
    TreewidthDP dp(p2, flat, 1);

    using S = Status;
    // t2 at a leaf claims two earlier neighbours, impossible in a 2-bag
    DPIndex t2idx{{0, 1}, {static_cast<int>(S::Z), static_cast<int>(S::T2)}};
    CHECK_FALSE(dp.validIndex(0, t2idx));

    DPTable table = dp.leafTable(0);
    // p=(0,1) -> statuses (z, o2), value 1
    DPIndex o2idx{{0, 1}, {static_cast<int>(S::Z), static_cast<int>(S::O2)}};
    auto it = table.find(dp.encode({1, 2}, o2idx));
    REQUIRE(it != table.end());
    CHECK(it->second == 1);
    CHECK(table.find(dp.encode({1, 2}, t2idx)) == table.end());
    // quasi-infection bound: no leaf entry may have two neighbours before p-1
    for (const auto& [key, val] : table) {
        DPIndex idx = dp.decode({1, 2}, key);
        CHECK(dp.validIndex(0, idx));
    }
}

TEST_CASE("join combination matches the paper's pair table when the bag is quiet") {
    // independent bag (no earlier bag neighbours): for f(r) = t1 exactly the
    // five printed shapes combine, for t2 the four, o1/o2/z one each
    Graph host(3, {{1, 2}, {1, 3}}); // vertex 1 with two outside neighbours
    NiceTreeDecomposition ntd;
    using K = NiceTreeDecomposition::Kind;
    // leaves {1,2} and {1,3}, forget the outside vertex on each side, join {1}
    ntd.nodes.push_back({K::Leaf, 0, {1}, -1, -1});       // 0
    ntd.nodes.push_back({K::Introduce, 2, {1, 2}, 0, -1}); // 1
    ntd.nodes.push_back({K::Forget, 2, {1}, 1, -1});       // 2
    ntd.nodes.push_back({K::Leaf, 0, {1}, -1, -1});        // 3
    ntd.nodes.push_back({K::Introduce, 3, {1, 3}, 3, -1}); // 4
    ntd.nodes.push_back({K::Forget, 3, {1}, 4, -1});       // 5
    ntd.nodes.push_back({K::Join, 0, {1}, 2, 5});          // 6
    ntd.root = 6;
    REQUIRE(validateNice(host, ntd));
    TreewidthDP dp(host, ntd, 2);

    using S = Status;
    auto single = [&](int p, S f) {
        DPIndex idx{{p}, {static_cast<int>(f)}};
        return dp.encode({1}, idx);
    };
    auto tableWith = [&](std::vector<std::pair<int, S>> entries, int val) {
        DPTable t;
        for (auto [p, f] : entries) t[single(p, f)] = val;
        return t;
    };

    // which unordered pairs produce t1 at p=2
    std::vector<std::pair<S, S>> producedT1, producedT2;
    for (S a : {S::Z, S::O1, S::O2, S::T1, S::T2})
        for (S b : {S::Z, S::O1, S::O2, S::T1, S::T2}) {
            DPTable left = tableWith({{2, a}}, 2);
            DPTable right = tableWith({{2, b}}, 2);
            DPTable joined = dp.joinTable(6, left, right);
            for (const auto& [key, val] : joined) {
                DPIndex idx = dp.decode({1}, key);
                if (idx.f[0] == static_cast<int>(S::T1) && static_cast<int>(a) <= static_cast<int>(b))
                    producedT1.emplace_back(a, b);
                if (idx.f[0] == static_cast<int>(S::T2) && static_cast<int>(a) <= static_cast<int>(b))
                    producedT2.emplace_back(a, b);
            }
        }
    std::sort(producedT1.begin(), producedT1.end());
    std::sort(producedT2.begin(), producedT2.end());
    std::vector<std::pair<S, S>> expectT1{{S::Z, S::T1}, {S::O1, S::O2}, {S::O1, S::T2},
                                          {S::O2, S::T1}, {S::T1, S::T2}};
    std::vector<std::pair<S, S>> expectT2{{S::Z, S::T2}, {S::O2, S::O2}, {S::O2, S::T2},
                                          {S::T2, S::T2}};
    std::sort(expectT1.begin(), expectT1.end());
    std::sort(expectT2.begin(), expectT2.end());
    CHECK(producedT1 == expectT1);
    CHECK(producedT2 == expectT2);
}

TEST_CASE("join symmetry") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 15; ++trial) {
        int n = 5 + static_cast<int>(rng() % 4);
        Graph g = randomLowWidthGraph(rng, n, 3);
        NiceTreeDecomposition ntd = niceify(g, minDegreeDecomposition(g));
        TreewidthDP dp(g, ntd, n - 1);
        dp.run();
        for (int i = 0; i < static_cast<int>(ntd.nodes.size()); ++i) {
            const auto& nd = ntd.nodes[static_cast<size_t>(i)];
            if (nd.kind != NiceTreeDecomposition::Kind::Join) continue;
            const DPTable& a = dp.table(nd.child1);
            const DPTable& b = dp.table(nd.child2);
            CHECK(dp.joinTable(i, a, b) == dp.joinTable(i, b, a));
        }
    }
}

TEST_CASE("maxTimeTreewidth fixtures") {
    Graph p3 = pathGraph(3);
    CHECK(maxTimeTreewidth(p3, pathDecomposition(3)) == 1);
    Graph c4 = cycleGraph(4);
    CHECK(maxTimeTreewidth(c4, minDegreeDecomposition(c4)) == 1);
    Graph q3 = q3Graph();
    CHECK(maxTimeTreewidth(q3, minDegreeDecomposition(q3)) == 3);
    Graph prism = prismGraph();
    CHECK(maxTimeTreewidth(prism, minDegreeDecomposition(prism)) == 2);

    // trees and cycles
    for (int n = 2; n <= 8; ++n) {
        Graph p = pathGraph(n);
        CHECK(maxTimeTreewidth(p, minDegreeDecomposition(p)) == maxTimeExhaustive(p).t);
    }
    for (int n = 3; n <= 8; ++n) {
        Graph c = cycleGraph(n);
        CHECK(maxTimeTreewidth(c, minDegreeDecomposition(c)) == maxTimeExhaustive(c).t);
    }
}

TEST_CASE("maxTimeTreewidth rejects invalid input") {
    Graph p4 = pathGraph(4);
    TreeDecomposition broken;
    broken.bags = {{1, 2}, {3, 4}};
    broken.edges = {{0, 1}};
    CHECK_THROWS_AS(maxTimeTreewidth(p4, broken), PercError);
    CHECK_THROWS_AS(maxTimeTreewidth(Graph(3, {{1, 2}}), pathDecomposition(3)), PercError);
}

TEST_CASE("treewidth DP equals the oracle; decision mode equals exact mode") {
    std::mt19937_64 rng(2024);
    int graphs = 0;
    while (graphs < 60) {
        int n = 4 + static_cast<int>(rng() % 7);
        Graph g = randomLowWidthGraph(rng, n, 3);
        ++graphs;
        TreeDecomposition td = minDegreeDecomposition(g);
        int truth = maxTimeExhaustive(g).t;
        REQUIRE(maxTimeTreewidth(g, td) == truth);
        for (int k = 0; k <= n; ++k) REQUIRE(decideTreewidth(g, td, k) == (truth >= k));
    }
}

TEST_CASE("table sizes respect the 5^b (cap+1)^b bound") {
    Graph q3 = q3Graph();
    NiceTreeDecomposition ntd = niceify(q3, minDegreeDecomposition(q3));
    TreewidthDP dp(q3, ntd, 7);
    dp.run();
    for (int i = 0; i < static_cast<int>(ntd.nodes.size()); ++i) {
        double bound = 1;
        for (size_t j = 0; j < ntd.nodes[static_cast<size_t>(i)].bag.size(); ++j) bound *= 5.0 * 8;
        CHECK(static_cast<double>(dp.table(i).size()) <= bound);
    }
}

TEST_CASE("witness reconstruction replays as a percolation") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 4 + static_cast<int>(rng() % 6);
        Graph g = randomLowWidthGraph(rng, n, 3);
        NiceTreeDecomposition ntd = niceify(g, minDegreeDecomposition(g));
        TreewidthDP dp(g, ntd, n - 1);
        dp.run();
        auto wit = dp.reconstructWitness();
        CHECK(wit.t == maxTimeExhaustive(g).t);
        InfectionTrace tr = percolate(g, wit.seeds);
        REQUIRE(tr.percolating);
        CHECK(tr.lastRound == wit.t);
        for (int v = 1; v <= n; ++v)
            CHECK(tr.timeOf(v) == std::optional<int>(wit.times[static_cast<size_t>(v)]));
    }
}
