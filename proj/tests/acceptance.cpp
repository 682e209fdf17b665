// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Invoked as: acceptance <path-to-perc-binary>

#include "perc/delta3.hpp"
#include "perc/errors.hpp"
#include "perc/fpt.hpp"
#include "perc/generators.hpp"
#include "perc/graph.hpp"
#include "perc/oracle.hpp"
#include "perc/percolate.hpp"
#include "perc/solidgrid.hpp"
#include "perc/treewidth.hpp"
#include "testutil.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <sys/wait.h>

using namespace perc;
using namespace perc::testutil;

namespace {

int failedCriteria = 0;

struct Reporter {
    int id;
    std::string name;
    std::ostringstream detail;
    bool ok = true;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    Reporter(int i, std::string n) : id(i), name(std::move(n)) {}

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail << what;
        } else if (!cond) {
            detail << "; " << what;
        }
    }

    ~Reporter() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "CRITERION " << id << " " << (ok ? "PASS" : "FAIL") << " - " << name;
        if (!detail.str().empty()) std::cout << " [" << detail.str() << "]";
        std::cout << " (" << static_cast<int>(secs * 1000) << " ms)" << std::endl;
        if (!ok) ++failedCriteria;
    }
};

Graph randomConnected(std::mt19937_64& rng, int n, int maxDeg) {
    while (true) {
        Graph g = genRandomMaxDeg(n, maxDeg, rng());
        if (g.connected()) return g;
    }
}

// the second-smallest earlier-neighbour time of an infected vertex is its
// own time minus one; a never-infected vertex sees at most one infection
bool traceInvariantsHold(const Graph& g, const InfectionTrace& tr, std::string* why) {
    for (int v = 1; v <= g.vertexCount(); ++v) {
        auto tv = tr.timeOf(v);
        bool isSeed = std::binary_search(tr.seeds.begin(), tr.seeds.end(), v);
        if ((tv == std::optional<int>(0)) != isSeed) {
            *why = "seed/time-0 mismatch at vertex " + std::to_string(v);
            return false;
        }
        if (!tv) {
            int finite = 0;
            for (int w : g.neighbors(v))
                if (tr.timeOf(w)) ++finite;
            if (finite > 1) {
                *why = "never-infected vertex " + std::to_string(v) + " has two infected neighbours";
                return false;
            }
        } else if (*tv >= 1) {
            std::vector<int> earlier;
            for (int w : g.neighbors(v)) {
                auto tw = tr.timeOf(w);
                if (tw && *tw < *tv) earlier.push_back(*tw);
            }
            std::sort(earlier.begin(), earlier.end());
            if (earlier.size() < 2 || earlier[1] != *tv - 1) {
                *why = "second-smallest earlier time wrong at vertex " + std::to_string(v);
                return false;
            }
        }
    }
    return true;
}

void criterion1() {
    Reporter r(1, "oracle self-consistency on random connected graphs (n <= 8)");
    std::mt19937_64 rng(101);
    int samples = 0;
    while (samples < 500) {
        int n = 3 + static_cast<int>(rng() % 6);
        int maxDeg = 2 + static_cast<int>(rng() % 4);
        Graph g = randomConnected(rng, n, maxDeg);
        ++samples;
        OracleResult res = maxTimeExhaustive(g);
        InfectionTrace tr = percolate(g, res.witness);
        r.require(tr.percolating, "witness does not percolate");
        r.require(tr.lastRound == res.t, "witness time differs from reported t");
        std::string why;
        r.require(traceInvariantsHold(g, tr, &why), why);
        // invariants must hold on arbitrary traces too, percolating or not
        std::vector<int> seeds;
        for (int v = 1; v <= n; ++v)
            if (rng() % 3 == 0) seeds.push_back(v);
        InfectionTrace loose = percolate(g, seeds);
        r.require(traceInvariantsHold(g, loose, &why), why);
        if (!r.ok) return;
    }
    r.detail << "500 samples";
}

void criterion2() {
    Reporter r(2, "delta3 solvers equal the oracle (all cubic n <= 8, random d3 n <= 10)");
    // fixed fixtures first
    r.require(maxTimeExhaustive(completeGraph(4)).t == 1, "t(K4) != 1");
    r.require(maxTimeDelta3(completeGraph(4)) == 1, "delta3 t(K4) != 1");
    r.require(maxTimeExhaustive(prismGraph()).t == 2, "t(prism) != 2");
    r.require(maxTimeDelta3(prismGraph()) == 2, "delta3 t(prism) != 2");
    r.require(maxTimeExhaustive(q3Graph()).t == 3, "t(Q3) != 3");
    r.require(maxTimeDelta3(q3Graph()) == 3, "delta3 t(Q3) != 3");

    int cubic = 0;
    for (int n : {4, 6, 8}) {
        forEachLabeledCubicGraph(n, [&](const Graph& g) {
            if (!r.ok) return;
            ++cubic;
            int truth = maxTimeExhaustive(g).t;
            if (maxTimeDelta3(g) != truth) {
                r.require(false, "maxTimeDelta3 disagrees on a cubic graph (n=" +
                                     std::to_string(n) + ")");
                return;
            }
            for (int k = 1; k <= n && r.ok; ++k)
                r.require(decideDelta3(g, k) == (truth >= k), "decideDelta3 disagrees (cubic)");
        });
        if (!r.ok) return;
    }

    int randomD3 = 0;
    for (uint64_t seed = 500; randomD3 < 200; ++seed) {
        int n = 6 + static_cast<int>(seed % 5);
        Graph g = genRandomMaxDeg(n, 3, seed);
        if (g.maxDegree() != 3) continue;
        ++randomD3;
        int truth = maxTimeExhaustive(g).t;
        r.require(maxTimeDelta3(g) == truth, "maxTimeDelta3 disagrees on random d3 graph");
        for (int k = 1; k <= 4 && r.ok; ++k)
            r.require(decideDelta3(g, k) == (truth >= k), "decideDelta3 disagrees (random)");
        if (!r.ok) return;
    }
    r.detail << cubic << " cubic + " << randomD3 << " random graphs";
}

void criterion3() {
    Reporter r(3, "solid-grid solver equals the oracle on every polyomino <= 12 vertices");
    int discrepancies = 0;
    for (int k = 2; k <= 7; ++k)
        for (LadderCase c : {LadderCase::LongSide, LadderCase::Diagonal}) {
            if (c == LadderCase::LongSide && k < 3) continue;
            for (int t = 0; t <= 2; ++t)
                if (ladderFormulaValue(k, c, t) != ladderEnumeratedValue(k, c, t)) ++discrepancies;
        }
    int count = 0;
    genSolidPolyominoes(12, [&](const GridGraph& gg) {
        if (!r.ok) return;
        ++count;
        if (maxTimeSolidGrid(gg) != maxTimeExhaustive(gg.graph).t)
            r.require(false, "disagreement on a " + std::to_string(gg.graph.vertexCount()) +
                                 "-vertex solid grid");
    });
    if (!r.ok) return;
    r.detail << count << " solid grids checked; formula-vs-enumeration discrepancies (k <= 7): "
             << discrepancies << " (exact table authoritative)";
}

void criterion4() {
    Reporter r(4, "theorem-2 reduction: longest-path >= k iff t(G') >= 3k+2 (grids <= 6 vertices)");
    int shapes = 0, decisions = 0, oracleChecked = 0;
    enumerateGridGraphs(6, false, [&](const GridGraph& gg) {
        if (!r.ok) return;
        if (gg.graph.maxDegree() > 3) return;
        ++shapes;
        ReductionResult res = gridReduction(gg);
        try {
            auditReduction(res);
        } catch (const PercError& e) {
            r.require(false, std::string("audit failed: ") + e.what());
            return;
        }
        int longest = longestPathBruteForce(gg.graph);
        for (int k = 0; k <= longest + 1 && r.ok; ++k) {
            bool want = longest >= k;
            bool got = decideDelta3(res.gg.graph, 3 * k + 2);
            ++decisions;
            r.require(got == want, "equivalence fails at k=" + std::to_string(k) + " on a " +
                                       std::to_string(gg.graph.vertexCount()) + "-vertex grid");
        }
        if (res.gg.graph.vertexCount() <= 18 && r.ok) {
            // small outputs: confirm against the oracle directly
            ++oracleChecked;
            int t = maxTimeExhaustive(res.gg.graph, {18, true, 1}).t;
            r.require((t >= 3 * longest + 2) == true, "oracle t below 3L+2");
            r.require((t >= 3 * (longest + 1) + 2) == false, "oracle t reaches 3(L+1)+2");
        }
    });
    if (!r.ok) return;
    r.detail << shapes << " grids, " << decisions << " decisions, " << oracleChecked
             << " oracle-confirmed outputs";
}

void criterion5() {
    Reporter r(5, "fpt decision equals the oracle (random n <= 10, maxdeg 3..5, k <= 4)");
    int cases = 0;
    for (int maxDeg : {3, 4, 5}) {
        int used = 0;
        for (uint64_t seed = 9000ULL * static_cast<uint64_t>(maxDeg); used < 70 && r.ok; ++seed) {
            int n = 5 + static_cast<int>(seed % 6);
            Graph g = genRandomMaxDeg(n, maxDeg, seed);
            if (g.maxDegree() != maxDeg) continue;
            ++used;
            int truth = maxTimeExhaustive(g).t;
            for (int k = 1; k <= 4 && r.ok; ++k) {
                ++cases;
                r.require(decideDeltaK(g, k) == (truth >= k),
                          "fpt disagrees at k=" + std::to_string(k));
            }
        }
    }
    if (!r.ok) return;

    // far-seed monotonicity, exhaustively on all connected graphs n <= 4
    int sweeps = 0;
    forEachConnectedGraph(4, [&](const Graph& g) {
        if (!r.ok) return;
        const int n = g.vertexCount();
        for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            std::vector<int> q;
            for (int v = 1; v <= n; ++v)
                if (mask & (1ULL << (v - 1))) q.push_back(v);
            InfectionTrace base = percolate(g, q);
            for (int z = 1; z <= n; ++z) {
                if (std::binary_search(q.begin(), q.end(), z)) continue;
                std::vector<int> qz = q;
                qz.push_back(z);
                InfectionTrace boosted = percolate(g, qz);
                for (int w = 1; w <= n; ++w) {
                    auto ball = [&](int radius) {
                        auto b = neighborhoodWithin(g, z, radius);
                        return std::binary_search(b.begin(), b.end(), w);
                    };
                    int dist = 0;
                    while (!ball(dist)) ++dist;
                    auto tw = base.timeOf(w);
                    auto tw2 = boosted.timeOf(w);
                    for (int k = 1; k <= n; ++k) {
                        if (((!tw || *tw >= k) && dist >= k) && !(!tw2 || *tw2 >= k)) {
                            r.require(false, "far-seed monotonicity violated");
                            return;
                        }
                        ++sweeps;
                    }
                }
            }
        }
    });
    if (!r.ok) return;
    r.detail << cases << " fpt cases, " << sweeps << " monotonicity checks";
}

void criterion6() {
    Reporter r(6, "treewidth DP equals the oracle; decision mode equals exact mode");
    // fixtures: trees, cycles, Q3
    for (int n = 2; n <= 9 && r.ok; ++n) {
        Graph p = pathGraph(n);
        r.require(maxTimeTreewidth(p, minDegreeDecomposition(p)) == maxTimeExhaustive(p).t,
                  "tree fixture disagrees");
    }
    for (int n = 3; n <= 9 && r.ok; ++n) {
        Graph c = cycleGraph(n);
        r.require(maxTimeTreewidth(c, minDegreeDecomposition(c)) == maxTimeExhaustive(c).t,
                  "cycle fixture disagrees");
    }
    Graph q3 = q3Graph();
    r.require(maxTimeTreewidth(q3, minDegreeDecomposition(q3)) == 3, "Q3 fixture disagrees");
    if (!r.ok) return;

    std::mt19937_64 rng(606);
    int graphs = 0, decisionChecks = 0;
    while (graphs < 200 && r.ok) {
        int n = 4 + static_cast<int>(rng() % 7);
        Graph g = randomConnected(rng, n, 3 + static_cast<int>(rng() % 2));
        TreeDecomposition td = minDegreeDecomposition(g);
        if (td.width() > 3) continue;
        ++graphs;
        int truth = maxTimeExhaustive(g).t;
        r.require(maxTimeTreewidth(g, td) == truth, "exact mode disagrees with the oracle");
        for (int k = 0; k <= n && r.ok; ++k) {
            ++decisionChecks;
            r.require(decideTreewidth(g, td, k) == (truth >= k), "decision mode disagrees");
        }
        // join symmetry and table-size bounds on this instance
        NiceTreeDecomposition ntd = niceify(g, td);
        TreewidthDP dp(g, ntd, n - 1);
        dp.run();
        for (int i = 0; i < static_cast<int>(ntd.nodes.size()) && r.ok; ++i) {
            const auto& nd = ntd.nodes[static_cast<size_t>(i)];
            double bound = 1;
            for (size_t j = 0; j < nd.bag.size(); ++j) bound *= 5.0 * n;
            r.require(static_cast<double>(dp.table(i).size()) <= bound, "table size bound violated");
            if (nd.kind == NiceTreeDecomposition::Kind::Join)
                r.require(dp.joinTable(i, dp.table(nd.child1), dp.table(nd.child2)) ==
                              dp.joinTable(i, dp.table(nd.child2), dp.table(nd.child1)),
                          "join symmetry violated");
        }
    }
    if (!r.ok) return;
    r.detail << graphs << " random graphs, " << decisionChecks << " decision checks";
}

void criterion7() {
    Reporter r(7, "lemma-1 witness on every strict speedup (exhaustive small sweeps)");
    long checked = 0;
    auto sweep = [&](const Graph& g) {
        if (!r.ok) return;
        const int n = g.vertexCount();
        for (uint64_t mask = 0; mask < (1ULL << n); ++mask) {
            std::vector<int> seeds;
            for (int v = 1; v <= n; ++v)
                if (mask & (1ULL << (v - 1))) seeds.push_back(v);
            InfectionTrace base = percolate(g, seeds);
            for (int vp = 1; vp <= n; ++vp) {
                if (std::binary_search(seeds.begin(), seeds.end(), vp)) continue;
                std::vector<int> boostedSeeds = seeds;
                boostedSeeds.push_back(vp);
                InfectionTrace boosted = percolate(g, boostedSeeds);
                for (int v = 1; v <= n; ++v) {
                    auto t0 = base.timeOf(v), t1 = boosted.timeOf(v);
                    bool drop = t1 && (!t0 || *t1 < *t0);
                    if (!drop) continue;
                    Path w;
                    try {
                        w = lemma1Witness(g, seeds, v, vp);
                    } catch (const PercError& e) {
                        r.require(false, std::string("witness refused: ") + e.what());
                        return;
                    }
                    ++checked;
                    bool good = !w.empty() && w.front() == vp && w.back() == v;
                    for (size_t i = 0; i + 1 < w.size() && good; ++i)
                        good = g.adjacent(w[i], w[i + 1]) &&
                               *boosted.timeOf(w[i]) < *boosted.timeOf(w[i + 1]);
                    if (!good) {
                        r.require(false, "invalid witness path");
                        return;
                    }
                }
            }
        }
    };
    forEachConnectedGraph(5, sweep); // every connected graph up to 5 vertices
    forEachLabeledTree(6, sweep);
    std::mt19937_64 rng(707);
    for (int i = 0; i < 120 && r.ok; ++i)
        sweep(randomConnected(rng, 6 + static_cast<int>(rng() % 2), 3 + static_cast<int>(rng() % 3)));
    if (!r.ok) return;
    r.detail << checked << " speedups witnessed";
}

void criterion8(const std::string& bin) {
    Reporter r(8, "seeded commands byte-identical across runs and --jobs");
    if (bin.empty()) {
        r.require(false, "perc binary path not supplied");
        return;
    }
    auto work = std::filesystem::temp_directory_path() / "perc_acceptance";
    std::filesystem::create_directories(work);
    auto runOut = [&](const std::string& args, const std::string& tag) {
        auto f = work / (tag + ".txt");
        std::string cmd = bin + " " + args + " > " + f.string() + " 2>&1";
        int rc = std::system(cmd.c_str());
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        return std::make_pair(rc == -1 ? -1 : WEXITSTATUS(rc), ss.str());
    };

    auto [e1, gen1] = runOut("gen --family random-d3 --n 10 --seed 31", "g1");
    auto [e2, gen2] = runOut("gen --family random-d3 --n 10 --seed 31", "g2");
    r.require(e1 == 0 && gen1 == gen2 && !gen1.empty(), "gen not reproducible under a seed");

    auto [e3, grid1] = runOut("gen --family grid --width 4 --height 4 --density 0.7 --seed 8", "g3");
    auto [e4, grid2] = runOut("gen --family grid --width 4 --height 4 --density 0.7 --seed 8", "g4");
    r.require(e3 == 0 && e4 == 0 && grid1 == grid2, "grid gen not reproducible");

    auto [ev1, ver1] = runOut("verify --max-n 7 --trials 30 --seed 13 --jobs 1", "v1");
    auto [ev2, ver2] = runOut("verify --max-n 7 --trials 30 --seed 13 --jobs 4", "v2");
    auto [ev3, ver3] = runOut("verify --max-n 7 --trials 30 --seed 13 --jobs 4", "v3");
    r.require(ev1 == 0 && ev2 == 0 && ev3 == 0, "verify did not exit 0");
    r.require(ver1 == ver2 && ver2 == ver3, "verify output differs across runs/jobs");

    // a seeded graph file driven through a solver twice, with jobs varied
    std::string gfile = (work / "graph.txt").string();
    runOut("gen --family random-d3 --n 10 --seed 77 -o " + gfile, "gen");
    auto [em1, m1] = runOut("maxtime " + gfile + " --solver oracle --jobs 1", "m1");
    auto [em2, m2] = runOut("maxtime " + gfile + " --solver oracle --jobs 4", "m2");
    r.require(em1 == 0 && em2 == 0 && m1 == m2, "oracle output differs across --jobs");
}

} // namespace

int main(int argc, char** argv) {
    std::string bin = argc > 1 ? argv[1] : "";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8(bin);
    if (failedCriteria == 0) {
        std::cout << "ALL CRITERIA PASS" << std::endl;
        return 0;
    }
    std::cout << failedCriteria << " CRITERIA FAILED" << std::endl;
    return 1;
}
