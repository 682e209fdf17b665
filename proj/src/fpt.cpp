#include "perc/fpt.hpp"
#include "perc/errors.hpp"
#include "perc/percolate.hpp"

#include <algorithm>
#include <functional>

namespace perc {

namespace {

// Subsets of `pool` in lexicographic order of their id sequences:
// {}, {a1}, {a1,a2}, ..., {a1,an}, {a2}, ... Calls fn(subset); stops early
// when fn returns true.
bool forEachSubsetLex(const std::vector<int>& pool, std::vector<int>& subset, size_t from,
                      const std::function<bool(const std::vector<int>&)>& fn) {
    if (fn(subset)) return true;
    for (size_t i = from; i < pool.size(); ++i) {
        subset.push_back(pool[i]);
        if (forEachSubsetLex(pool, subset, i + 1, fn)) return true;
        subset.pop_back();
    }
    return false;
}

} // namespace

bool decideDeltaK(const Graph& g, int k, const FptOptions& opts,
                  std::optional<FptWitness>* witness) {
    if (witness) witness->reset();
    if (!g.connected()) fail(Errc::Disconnected, "fpt solver requires a connected graph");
    if (k <= 0) return true;

    for (int u = 1; u <= g.vertexCount(); ++u) {
        std::vector<int> near = neighborhoodWithin(g, u, k - 1);
        std::vector<int> pool;
        for (int v : near)
            if (v != u) pool.push_back(v);
        if (static_cast<int>(pool.size()) > opts.capBits)
            fail(Errc::WorkCapExceeded,
                 "fpt solver would enumerate 2^" + std::to_string(pool.size()) +
                     " seed subsets around vertex " + std::to_string(u) + " (cap 2^" +
                     std::to_string(opts.capBits) + ")");
        std::vector<int> far = neighborhoodBeyond(g, u, k);

        std::vector<int> subset;
        bool found = forEachSubsetLex(pool, subset, 0, [&](const std::vector<int>& sprime) {
            std::vector<int> seeds = far;
            seeds.insert(seeds.end(), sprime.begin(), sprime.end());
            InfectionTrace tr = percolate(g, seeds);
            return tr.percolating && tr.timeOf(u) == std::optional<int>(k);
        });
        if (found) {
            if (witness) {
                FptWitness w;
                w.u = u;
                w.sprime = subset;
                *witness = std::move(w);
            }
            return true;
        }
    }
    return false;
}

} // namespace perc
