#include "perc/delta3.hpp"
#include "perc/errors.hpp"
#include "perc/fpt.hpp"
#include "perc/generators.hpp"
#include "perc/graph.hpp"
#include "perc/oracle.hpp"
#include "perc/percolate.hpp"
#include "perc/solidgrid.hpp"
#include "perc/treewidth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace {

using namespace perc;

std::string joinIds(const std::vector<int>& ids) {
    std::string out;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += " ";
        out += std::to_string(ids[i]);
    }
    return out;
}

GridGraph requireGrid(const ParsedGraph& pg) {
    if (!pg.hasCoords())
        fail(Errc::BadInput, "this solver needs a GridGraph file (coord lines)");
    return pg.toGrid();
}

TreeDecomposition decompositionFor(const Graph& g, const std::string& tdFile) {
    if (tdFile.empty()) return minDegreeDecomposition(g);
    TreeDecomposition td = parseTdFile(tdFile);
    std::string why;
    if (!validateDecomposition(g, td, &why))
        fail(Errc::InvalidDecomposition, "invalid tree decomposition: " + why);
    return td;
}

int runSimulate(const std::string& graphFile, const std::string& seedFile) {
    ParsedGraph pg = parseGraphFile(graphFile);
    if (seedFile.empty()) fail(Errc::BadInput, "simulate requires --seeds");
    std::vector<int> seeds = parseSeedFile(seedFile, pg.graph);
    InfectionTrace tr = percolate(pg.graph, seeds);
    std::cout << "r 0: " << joinIds(tr.seeds) << "\n";
    for (size_t i = 0; i < tr.rounds.size(); ++i)
        std::cout << "r " << i + 1 << ": " << joinIds(tr.rounds[i]) << "\n";
    if (tr.percolating)
        std::cout << "t(S) = " << tr.lastRound << "\n";
    else
        std::cout << "NOT PERCOLATING\n";
    return 0;
}

int runMaxtime(const std::string& graphFile, const std::string& solver, const std::string& tdFile,
               bool explain, int jobs) {
    ParsedGraph pg = parseGraphFile(graphFile);
    if (solver == "oracle") {
        OracleOptions opts;
        opts.jobs = jobs;
        OracleResult res = maxTimeExhaustive(pg.graph, opts);
        std::cout << "t = " << res.t << "\n";
        std::cout << "witness = " << joinIds(res.witness) << "\n";
    } else if (solver == "delta3") {
        std::cout << "t = " << maxTimeDelta3(pg.graph) << "\n";
    } else if (solver == "solidgrid") {
        GridGraph gg = requireGrid(pg);
        SolidGridExplain ex = maxTimeSolidGridExplain(gg);
        std::cout << "t = " << ex.t << "\n";
        if (explain) {
            std::cout << "ladders = " << ex.decomposition.ladders.size() << "\n";
            for (size_t i = 0; i < ex.decomposition.ladders.size(); ++i) {
                const Ladder& lad = ex.decomposition.ladders[i];
                std::cout << "ladder " << i << ": k = " << lad.k << " "
                          << (lad.horizontal ? "horizontal" : "vertical")
                          << " ext = " << lad.ext[0] << " " << lad.ext[1] << " " << lad.ext[2]
                          << " " << lad.ext[3] << "\n";
            }
            std::cout << "connectors = " << ex.decomposition.connectors.size() << "\n";
            std::cout << "best start = " << ex.bestStart << "\n";
        }
    } else if (solver == "treewidth") {
        if (!pg.graph.connected())
            fail(Errc::Disconnected, "treewidth solver requires a connected graph");
        TreeDecomposition td = decompositionFor(pg.graph, tdFile);
        if (explain) {
            NiceTreeDecomposition ntd = niceify(pg.graph, td);
            TreewidthDP dp(pg.graph, std::move(ntd), std::max(0, pg.graph.vertexCount() - 1));
            dp.run();
            auto wit = dp.reconstructWitness();
            std::cout << "t = " << wit.t << "\n";
            std::cout << "width = " << td.width() << "\n";
            std::cout << "witness = " << joinIds(wit.seeds) << "\n";
        } else {
            std::cout << "t = " << maxTimeTreewidth(pg.graph, td) << "\n";
        }
    } else {
        fail(Errc::BadInput, "unknown solver '" + solver + "' for maxtime");
    }
    return 0;
}

int runDecide(const std::string& graphFile, const std::string& solver, int k,
              const std::string& tdFile, bool explain, int jobs) {
    ParsedGraph pg = parseGraphFile(graphFile);
    bool yes = false;
    if (solver == "oracle") {
        OracleOptions opts;
        opts.jobs = jobs;
        yes = decideExhaustive(pg.graph, k, opts);
    } else if (solver == "delta3") {
        yes = decideDelta3(pg.graph, k);
    } else if (solver == "fpt") {
        std::optional<FptWitness> wit;
        yes = decideDeltaK(pg.graph, k, {}, explain ? &wit : nullptr);
        if (explain && wit) {
            std::cout << "witness u = " << wit->u << "\n";
            std::cout << "witness Sprime = " << joinIds(wit->sprime) << "\n";
        }
    } else if (solver == "treewidth") {
        TreeDecomposition td = decompositionFor(pg.graph, tdFile);
        yes = decideTreewidth(pg.graph, td, k);
    } else {
        fail(Errc::BadInput, "unknown solver '" + solver + "' for decide");
    }
    std::cout << (yes ? "YES" : "NO") << "\n";
    return 0;
}

int runGen(const std::string& family, int k, int n, int maxN, int width, int height,
           double density, uint64_t seed, const std::string& input, const std::string& outFile,
           const std::string& outDir) {
    auto write = [&](const std::function<void(std::ostream&)>& fn) {
        if (outFile.empty()) {
            fn(std::cout);
        } else {
            std::ofstream out(outFile);
            if (!out) fail(Errc::BadInput, "cannot write " + outFile);
            fn(out);
        }
    };
    if (family == "ladder") {
        GridGraph gg = genLadder(k);
        write([&](std::ostream& o) { writeGraph(o, gg, {"family ladder k " + std::to_string(k)}); });
    } else if (family == "random-d3") {
        Graph g;
        uint64_t s = seed;
        do { // ask for max degree exactly 3
            g = genRandomMaxDeg(n, 3, s++);
        } while (g.maxDegree() != 3 && s < seed + 1000);
        if (g.maxDegree() != 3) fail(Errc::BadInput, "could not reach max degree 3 at this n");
        write([&](std::ostream& o) {
            writeGraph(o, g, nullptr, {"family random-d3 n " + std::to_string(n) + " seed " +
                                       std::to_string(seed)});
        });
    } else if (family == "grid") {
        GridGraph gg = genRandomGrid(width, height, density, seed);
        write([&](std::ostream& o) {
            writeGraph(o, gg, {"family grid seed " + std::to_string(seed)});
        });
    } else if (family == "polyomino") {
        if (outDir.empty()) fail(Errc::BadInput, "polyomino family requires --out-dir");
        std::filesystem::create_directories(outDir);
        int count = 0;
        genSolidPolyominoes(maxN, [&](const GridGraph& gg) {
            std::ostringstream name;
            name << outDir << "/poly" << ++count << ".txt";
            std::ofstream out(name.str());
            writeGraph(out, gg, {"family polyomino"});
        });
        std::cout << "generated = " << count << "\n";
    } else if (family == "reduction") {
        if (input.empty()) fail(Errc::BadInput, "reduction family requires --input");
        GridGraph gg = requireGrid(parseGraphFile(input));
        ReductionResult res = gridReduction(gg);
        auditReduction(res);
        std::vector<std::string> comments{"family reduction"};
        for (const auto& line : res.classComments()) comments.push_back(line);
        write([&](std::ostream& o) { writeGraph(o, res.gg, comments); });
    } else {
        fail(Errc::BadInput, "unknown family '" + family + "'");
    }
    return 0;
}

// One cross-validation case; `detail` carries the disagreement description.
struct VerifyCase {
    std::string name;
    std::function<bool(std::string& detail)> check;
};

struct VerifyFailure {
    size_t index;
    std::string name;
    std::string detail;
    std::string reproducer;
};

int runVerify(int maxN, int trials, uint64_t seed, int jobs) {
    if (maxN < 1 || maxN > 20)
        fail(Errc::BadInput, "verify needs --max-n in 1..20 (the oracle's subset cap)");
    if (trials < 0) fail(Errc::BadInput, "verify needs --trials >= 0");
    std::vector<VerifyCase> cases;
    std::vector<std::string> reproducers; // graph file text per case

    auto graphText = [](const Graph& g, const std::string& note) {
        std::ostringstream os;
        writeGraph(os, g, nullptr, {note});
        return os.str();
    };
    auto gridText = [](const GridGraph& gg, const std::string& note) {
        std::ostringstream os;
        writeGraph(os, gg, {note});
        return os.str();
    };

    // shrink a failing pure-graph comparison to a minimal reproducer
    auto minimize = [](Graph g, const std::function<bool(const Graph&)>& stillFails) {
        bool shrunk = true;
        while (shrunk && g.vertexCount() > 1) {
            shrunk = false;
            for (int drop = 1; drop <= g.vertexCount(); ++drop) {
                std::vector<std::pair<int, int>> edges;
                for (auto [u, v] : g.edges()) {
                    if (u == drop || v == drop) continue;
                    auto shift = [&](int x) { return x > drop ? x - 1 : x; };
                    edges.emplace_back(shift(u), shift(v));
                }
                Graph cand(g.vertexCount() - 1, edges);
                bool fails = false;
                if (cand.connected() && cand.vertexCount() >= 1) {
                    try {
                        fails = stillFails(cand);
                    } catch (const PercError&) {
                        fails = false;
                    }
                }
                if (fails) {
                    g = cand;
                    shrunk = true;
                    break;
                }
            }
        }
        return g;
    };

    auto addOracleComparison = [&](const std::string& name, const Graph& g,
                                   const std::function<int(const Graph&)>& solver,
                                   const std::string& note) {
        reproducers.push_back(graphText(g, note));
        Graph graph = g;
        cases.push_back({name, [graph, solver, &minimize, name](std::string& detail) {
                             auto mismatch = [&](const Graph& h) {
                                 return solver(h) != maxTimeExhaustive(h).t;
                             };
                             if (!mismatch(graph)) return true;
                             Graph tiny = minimize(graph, mismatch);
                             std::ostringstream os;
                             os << name << ": solver = " << solver(tiny)
                                << ", oracle = " << maxTimeExhaustive(tiny).t
                                << "\nminimized reproducer:\n";
                             writeGraph(os, tiny);
                             detail = os.str();
                             return false;
                         }});
    };

    // corpus 1: solid polyominoes -> solidgrid (+ delta3 when cubic-capped)
    genSolidPolyominoes(maxN, [&](const GridGraph& gg) {
        reproducers.push_back(gridText(gg, "verify polyomino"));
        GridGraph copy = gg;
        cases.push_back({"solidgrid vs oracle", [copy](std::string& detail) {
                             int a = maxTimeSolidGrid(copy);
                             int b = maxTimeExhaustive(copy.graph).t;
                             if (a == b) return true;
                             std::ostringstream os;
                             os << "solidgrid = " << a << ", oracle = " << b << "\n";
                             writeGraph(os, copy);
                             detail = os.str();
                             return false;
                         }});
        if (copy.graph.maxDegree() == 3) {
            reproducers.push_back(gridText(gg, "verify polyomino delta3"));
            cases.push_back({"delta3 vs oracle", [copy](std::string& detail) {
                                 int a = maxTimeDelta3(copy.graph);
                                 int b = maxTimeExhaustive(copy.graph).t;
                                 if (a == b) return true;
                                 detail = "delta3 = " + std::to_string(a) +
                                          ", oracle = " + std::to_string(b);
                                 return false;
                             }});
        }
    });

    // corpus 2: random bounded-degree graphs -> delta3 / treewidth / fpt
    std::mt19937_64 rng(seed);
    for (int i = 0; i < trials; ++i) {
        int n = 4 + static_cast<int>(rng() % static_cast<uint64_t>(std::max(1, maxN - 3)));
        int maxDeg = 3 + static_cast<int>(rng() % 3);
        Graph g = genRandomMaxDeg(n, maxDeg, rng());
        if (g.maxDegree() == 3) {
            addOracleComparison("delta3 vs oracle", g,
                                [](const Graph& h) { return maxTimeDelta3(h); },
                                "verify random delta3");
        }
        addOracleComparison("treewidth vs oracle", g,
                            [](const Graph& h) {
                                return maxTimeTreewidth(h, minDegreeDecomposition(h));
                            },
                            "verify random treewidth");
        Graph copy = g;
        for (int k = 1; k <= 3; ++k) {
            reproducers.push_back(graphText(g, "verify random fpt k=" + std::to_string(k)));
            int kk = k;
            cases.push_back({"fpt vs oracle", [copy, kk](std::string& detail) {
                                 bool a = decideDeltaK(copy, kk);
                                 bool b = decideExhaustive(copy, kk);
                                 if (a == b) return true;
                                 std::ostringstream os;
                                 os << "k = " << kk << ": fpt = " << (a ? "YES" : "NO")
                                    << ", oracle = " << (b ? "YES" : "NO") << "\n";
                                 writeGraph(os, copy);
                                 detail = os.str();
                                 return false;
                             }});
        }
    }

    // run all cases (optionally in parallel), report the first failure
    std::vector<VerifyFailure> failures;
    std::mutex mu;
    auto worker = [&](size_t begin, size_t stride) {
        for (size_t i = begin; i < cases.size(); i += stride) {
            std::string detail;
            bool ok;
            try {
                ok = cases[i].check(detail);
            } catch (const PercError& e) {
                ok = false;
                detail = std::string("solver error: ") + e.what();
            }
            if (!ok) {
                std::lock_guard<std::mutex> lock(mu);
                failures.push_back({i, cases[i].name, detail, reproducers[i]});
            }
        }
    };
    int J = std::max(1, jobs);
    if (J == 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < J; ++j) threads.emplace_back(worker, static_cast<size_t>(j), J);
        for (auto& th : threads) th.join();
    }
    if (failures.empty()) {
        std::cout << "ALL SOLVERS AGREE (" << cases.size() << " cases)\n";
        return 0;
    }
    std::sort(failures.begin(), failures.end(),
              [](const VerifyFailure& a, const VerifyFailure& b) { return a.index < b.index; });
    const auto& f = failures.front();
    std::cout << "DISAGREEMENT in case " << f.index << " [" << f.name << "]\n";
    std::cout << f.detail << "\n";
    std::cout << f.reproducer;
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximum 2-neighbour bootstrap percolation time toolkit"};
    app.require_subcommand(1);

    std::string graphFile, seedFile, tdFile, solver = "oracle";
    std::string family, input, outFile, outDir;
    int k = 0, genK = 2, genN = 8, maxN = 8, trials = 100, width = 4, height = 4, jobs = 1;
    double density = 0.6;
    uint64_t seed = 0;
    bool explain = false;

    auto* sim = app.add_subcommand("simulate", "run the infection process round by round");
    sim->add_option("graph", graphFile)->required();
    sim->add_option("--seeds", seedFile, "seed file (whitespace-separated ids)")->required();

    auto* mt = app.add_subcommand("maxtime", "compute t(G)");
    mt->add_option("graph", graphFile)->required();
    mt->add_option("--solver", solver, "oracle|delta3|solidgrid|treewidth");
    mt->add_option("--td", tdFile, "tree decomposition in PACE .td format");
    mt->add_flag("--explain", explain);
    mt->add_option("--jobs", jobs);

    auto* dec = app.add_subcommand("decide", "decide t(G) >= k");
    dec->add_option("graph", graphFile)->required();
    dec->add_option("-k", k)->required();
    dec->add_option("--solver", solver, "oracle|delta3|fpt|treewidth");
    dec->add_option("--td", tdFile);
    dec->add_flag("--explain", explain);
    dec->add_option("--jobs", jobs);

    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->add_option("--family", family, "ladder|polyomino|random-d3|grid|reduction")->required();
    gen->add_option("--k", genK, "ladder length");
    gen->add_option("--n", genN, "vertex count for random families");
    gen->add_option("--max-n", maxN, "vertex bound for polyomino enumeration");
    gen->add_option("--width", width);
    gen->add_option("--height", height);
    gen->add_option("--density", density);
    gen->add_option("--seed", seed);
    gen->add_option("--input", input, "input grid graph (reduction family)");
    gen->add_option("-o,--output", outFile);
    gen->add_option("--out-dir", outDir);

    auto* ver = app.add_subcommand("verify", "cross-validate all solvers against the oracle");
    ver->add_option("--max-n", maxN);
    ver->add_option("--trials", trials);
    ver->add_option("--seed", seed);
    ver->add_option("--jobs", jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return runSimulate(graphFile, seedFile);
        if (mt->parsed()) return runMaxtime(graphFile, solver, tdFile, explain, jobs);
        if (dec->parsed()) return runDecide(graphFile, solver, k, tdFile, explain, jobs);
        if (gen->parsed())
            return runGen(family, genK, genN, maxN, width, height, density, seed, input, outFile,
                          outDir);
        if (ver->parsed()) return runVerify(maxN, trials, seed, jobs);
    } catch (const PercError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
