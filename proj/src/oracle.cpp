#include "perc/oracle.hpp"
#include "perc/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <thread>

namespace perc {

namespace {

// Reusable percolation scratch; returns only what the search needs.
struct Runner {
    const Graph& g;
    std::vector<int> mark;     // generation-stamped "infected" flag
    std::vector<int> cnt;      // generation-stamped infected-neighbour count
    std::vector<int> gen;      // generation id per slot
    std::vector<int> frontier, next;
    int generation = 0;

    explicit Runner(const Graph& gr)
        : g(gr),
          mark(static_cast<size_t>(gr.vertexCount()) + 1, 0),
          cnt(static_cast<size_t>(gr.vertexCount()) + 1, 0),
          gen(static_cast<size_t>(gr.vertexCount()) + 1, -1) {}

    // (percolates, rounds)
    std::pair<bool, int> run(const std::vector<int>& seeds) {
        ++generation;
        int infected = 0;
        frontier.clear();
        for (int v : seeds) {
            gen[static_cast<size_t>(v)] = generation;
            mark[static_cast<size_t>(v)] = 1;
            cnt[static_cast<size_t>(v)] = 0;
            frontier.push_back(v);
            ++infected;
        }
        int round = 0;
        while (!frontier.empty()) {
            next.clear();
            for (int v : frontier)
                for (int w : g.neighbors(v)) {
                    size_t wi = static_cast<size_t>(w);
                    if (gen[wi] != generation) {
                        gen[wi] = generation;
                        mark[wi] = 0;
                        cnt[wi] = 0;
                    }
                    if (mark[wi]) continue;
                    if (++cnt[wi] == 2) next.push_back(w);
                }
            if (next.empty()) break;
            ++round;
            for (int w : next) mark[static_cast<size_t>(w)] = 1;
            infected += static_cast<int>(next.size());
            std::swap(frontier, next);
        }
        return {infected == g.vertexCount(), round};
    }
};

struct Best {
    int t = -1;
    std::vector<int> witness;
};

// t desc, |S| asc, then lexicographically smallest id sequence.
bool better(int t, const std::vector<int>& w, const Best& cur) {
    if (cur.t < 0) return true;
    if (t != cur.t) return t > cur.t;
    if (w.size() != cur.witness.size()) return w.size() < cur.witness.size();
    return w < cur.witness;
}

} // namespace

OracleResult maxTimeExhaustive(const Graph& g, const OracleOptions& opts) {
    const int n = g.vertexCount();
    if (n > opts.capVertices)
        fail(Errc::CapExceeded, "oracle: n = " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(opts.capVertices));
    if (!g.connected()) fail(Errc::Disconnected, "oracle requires a connected graph");

    std::vector<int> mandatory, free;
    for (int v = 1; v <= n; ++v) {
        // degree <= 1 vertices can never gain two infected neighbours,
        // so every percolating set contains them
        if (opts.pruneForced && g.degree(v) <= 1)
            mandatory.push_back(v);
        else
            free.push_back(v);
    }
    const int F = static_cast<int>(free.size());
    const int jobs = std::max(1, opts.jobs);

    auto searchStride = [&](int stride, int offset) {
        Runner runner(g);
        Best best;
        std::vector<int> seeds;
        uint64_t counter = 0;
        std::vector<int> idx;
        for (int s = 0; s <= F; ++s) {
            // index combinations in lexicographic order = seed sequences in
            // lexicographic order (free is sorted)
            idx.resize(static_cast<size_t>(s));
            for (int i = 0; i < s; ++i) idx[static_cast<size_t>(i)] = i;
            while (true) {
                if (counter++ % static_cast<uint64_t>(stride) == static_cast<uint64_t>(offset)) {
                    seeds.clear();
                    seeds.insert(seeds.end(), mandatory.begin(), mandatory.end());
                    for (int i : idx) seeds.push_back(free[static_cast<size_t>(i)]);
                    std::sort(seeds.begin(), seeds.end());
                    auto [perc, t] = runner.run(seeds);
                    if (perc && better(t, seeds, best)) {
                        best.t = t;
                        best.witness = seeds;
                    }
                }
                // advance to the next combination
                int i = s - 1;
                while (i >= 0 && idx[static_cast<size_t>(i)] == F - s + i) --i;
                if (i < 0) break;
                ++idx[static_cast<size_t>(i)];
                for (int j = i + 1; j < s; ++j)
                    idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
            }
        }
        return best;
    };

    Best best;
    if (jobs == 1) {
        best = searchStride(1, 0);
    } else {
        std::vector<Best> results(static_cast<size_t>(jobs));
        std::vector<std::thread> threads;
        for (int j = 0; j < jobs; ++j)
            threads.emplace_back(
                [&, j] { results[static_cast<size_t>(j)] = searchStride(jobs, j); });
        for (auto& th : threads) th.join();
        for (const auto& r : results)
            if (r.t >= 0 && better(r.t, r.witness, best)) best = r;
    }
    return {best.t, best.witness};
}

bool decideExhaustive(const Graph& g, int k, const OracleOptions& opts) {
    if (k <= 0) return true;
    return maxTimeExhaustive(g, opts).t >= k;
}

} // namespace perc
