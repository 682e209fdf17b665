#ifndef PERC_TREEWIDTH_HPP
#define PERC_TREEWIDTH_HPP

#include "perc/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

namespace perc {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;      // per node, sorted vertex ids
    std::vector<std::pair<int, int>> edges;  // tree edges, 0-based node ids

    int nodeCount() const { return static_cast<int>(bags.size()); }
    int width() const;
};

bool validateDecomposition(const Graph& g, const TreeDecomposition& td,
                           std::string* why = nullptr);

// Min-degree elimination heuristic; width is not guaranteed optimal.
TreeDecomposition minDegreeDecomposition(const Graph& g);

// PACE-2017 .td text format.
TreeDecomposition parseTd(std::istream& in);
TreeDecomposition parseTdFile(const std::string& path);
void writeTd(std::ostream& out, const TreeDecomposition& td, int n);

struct NiceTreeDecomposition {
    enum class Kind { Leaf, Introduce, Forget, Join };
    struct Node {
        Kind kind = Kind::Leaf;
        int vertex = 0; // the introduced / forgotten vertex
        std::vector<int> bag;
        int child1 = -1;
        int child2 = -1;
    };
    std::vector<Node> nodes;
    int root = -1;
    int width() const;
};

// Rooted nice form of a valid decomposition: leaves hold a single vertex (or
// none), joins duplicate bags, and adjacent bags differ by one vertex.
NiceTreeDecomposition niceify(const Graph& g, const TreeDecomposition& td);
bool validateNice(const Graph& g, const NiceTreeDecomposition& ntd, std::string* why = nullptr);

// Per-bag-vertex status: how many neighbours of v inside G_t are infected
// before p(v), and whether any of them strictly before p(v)-1.
enum class Status : int { Z = 0, O1 = 1, O2 = 2, T1 = 3, T2 = 4 };

struct DPIndex {
    std::vector<int> p; // parallel to the node's sorted bag
    std::vector<int> f; // Status values
};

// Table W_t keyed by packed (p,f); value = max time of an admissible
// quasi-infection time function (absent key = -1).
using DPTable = std::unordered_map<uint64_t, int>;

class TreewidthDP {
public:
    // timeCap = largest representable time (n-1 for exact, k for decision)
    TreewidthDP(const Graph& g, NiceTreeDecomposition ntd, int timeCap);

    const NiceTreeDecomposition& nice() const { return ntd_; }
    int timeCap() const { return timeCap_; }

    uint64_t encode(const std::vector<int>& bag, const DPIndex& idx) const;
    DPIndex decode(const std::vector<int>& bag, uint64_t key) const;

    // The paper's validity bullets; leaf nodes additionally require the
    // status to match the exact neighbour counts within the bag.
    bool validIndex(int node, const DPIndex& idx) const;

    DPTable leafTable(int node) const;
    DPTable introduceTable(int node, const DPTable& child) const;
    DPTable forgetTable(int node, const DPTable& child) const;
    DPTable joinTable(int node, const DPTable& left, const DPTable& right) const;

    // Bottom-up evaluation; tables retained per node.
    void run();
    const DPTable& table(int node) const { return tables_[static_cast<size_t>(node)]; }

    // Highest root value whose index satisfies f(v) in {t1,t2} or p(v)=0.
    int rootMax() const;

    // Extends a root optimum to a full assignment g; seeds = {v : g(v)=0}.
    struct Witness {
        int t = 0;
        std::vector<int> seeds;
        std::vector<int> times; // per vertex
    };
    Witness reconstructWitness() const;

private:
    const Graph& g_;
    NiceTreeDecomposition ntd_;
    int timeCap_;
    int bitsPerSlot_;
    std::vector<DPTable> tables_;

    friend struct DPOps;
};

int maxTimeTreewidth(const Graph& g, const TreeDecomposition& td);
bool decideTreewidth(const Graph& g, const TreeDecomposition& td, int k);

} // namespace perc

#endif
