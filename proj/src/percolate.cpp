#include "perc/percolate.hpp"
#include "perc/errors.hpp"

#include <algorithm>
#include <limits>

namespace perc {

InfectionTrace percolate(const Graph& g, const std::vector<int>& seeds) {
    const int n = g.vertexCount();
    InfectionTrace tr;
    tr.seeds = seeds;
    std::sort(tr.seeds.begin(), tr.seeds.end());
    tr.seeds.erase(std::unique(tr.seeds.begin(), tr.seeds.end()), tr.seeds.end());
    for (int v : tr.seeds) g.checkVertex(v);

    tr.time.assign(static_cast<size_t>(n) + 1, kNever);
    std::vector<int> infectedNbrs(static_cast<size_t>(n) + 1, 0);
    std::vector<int> frontier = tr.seeds;
    int infected = 0;
    for (int v : frontier) {
        tr.time[static_cast<size_t>(v)] = 0;
        ++infected;
    }
    int round = 0;
    while (!frontier.empty()) {
        ++round;
        std::vector<int> next;
        for (int v : frontier)
            for (int w : g.neighbors(v)) {
                if (tr.time[static_cast<size_t>(w)] != kNever) continue;
                if (++infectedNbrs[static_cast<size_t>(w)] == 2) next.push_back(w);
            }
        for (int w : next) tr.time[static_cast<size_t>(w)] = round;
        if (!next.empty()) {
            std::sort(next.begin(), next.end());
            tr.rounds.push_back(next);
        }
        infected += static_cast<int>(next.size());
        frontier = std::move(next);
    }
    tr.percolating = (infected == n);
    tr.lastRound = static_cast<int>(tr.rounds.size());
    return tr;
}

bool isPercolating(const Graph& g, const std::vector<int>& seeds) {
    return percolate(g, seeds).percolating;
}

int percolationTime(const Graph& g, const std::vector<int>& seeds) {
    InfectionTrace tr = percolate(g, seeds);
    if (!tr.percolating) fail(Errc::NotPercolating, "seed set does not percolate");
    return tr.lastRound;
}

std::optional<int> timeOf(const Graph& g, const std::vector<int>& seeds, int v) {
    g.checkVertex(v);
    return percolate(g, seeds).timeOf(v);
}

Path extractInfectionPath(const Graph& g, const InfectionTrace& trace, int v) {
    g.checkVertex(v);
    auto tv = trace.timeOf(v);
    if (!tv) fail(Errc::NotPercolating, "vertex " + std::to_string(v) + " is never infected");
    Path rev{v};
    int cur = v;
    for (int t = *tv; t > 0; --t) {
        int pred = 0;
        for (int w : g.neighbors(cur))
            if (trace.time[static_cast<size_t>(w)] == t - 1) {
                pred = w;
                break; // neighbours are sorted, first hit = smallest id
            }
        // a vertex infected at t has second-smallest neighbour time t-1,
        // so a time-(t-1) neighbour always exists
        rev.push_back(pred);
        cur = pred;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

Path extractInfectionPath(const Graph& g, const std::vector<int>& seeds, int v) {
    return extractInfectionPath(g, percolate(g, seeds), v);
}

Path lemma1Witness(const Graph& g, const std::vector<int>& seeds, int v, int vprime) {
    g.checkVertex(v);
    g.checkVertex(vprime);
    InfectionTrace base = percolate(g, seeds);
    std::vector<int> sprime = seeds;
    sprime.push_back(vprime);
    InfectionTrace boosted = percolate(g, sprime);

    auto timeAt = [](const InfectionTrace& tr, int u) {
        int t = tr.time[static_cast<size_t>(u)];
        return t == kNever ? std::numeric_limits<int>::max() : t;
    };
    if (timeAt(boosted, v) >= timeAt(base, v))
        fail(Errc::NoSpeedup, "adding vertex " + std::to_string(vprime) +
                                  " does not strictly decrease the infection time of " +
                                  std::to_string(v));

    // Walk Lemma 1's induction backwards: from v, step to a neighbour whose
    // boosted time dropped below its base time, until reaching vprime at time 0.
    Path rev{v};
    int cur = v;
    while (timeAt(boosted, cur) > 0) {
        int pick = 0;
        for (int w : g.neighbors(cur)) {
            if (timeAt(boosted, w) < timeAt(base, w) &&
                timeAt(boosted, w) < timeAt(boosted, cur)) {
                pick = w;
                break;
            }
        }
        if (pick == 0)
            fail(Errc::NoSpeedup, "internal: no earlier sped-up neighbour found"); // unreachable
        rev.push_back(pick);
        cur = pick;
    }
    // time 0 with a strict drop means the start is vprime itself
    if (cur != vprime)
        fail(Errc::NoSpeedup, "internal: witness walk ended away from vprime"); // unreachable
    std::reverse(rev.begin(), rev.end());
    return rev;
}

} // namespace perc
