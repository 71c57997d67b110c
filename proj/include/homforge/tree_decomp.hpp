#pragma once

#include "homforge/graph.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace homforge {

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct DecompNode {
    NodeKind kind = NodeKind::Leaf;
    std::vector<Vertex> bag; // sorted
    Vertex v = 0;            // introduced / forgotten vertex
    std::vector<int> children;
    friend bool operator==(const DecompNode&, const DecompNode&) = default;
};

struct NiceTreeDecomp {
    std::vector<DecompNode> nodes;
    int root = -1;

    int add(DecompNode node);
    friend bool operator==(const NiceTreeDecomp&, const NiceTreeDecomp&) = default;
};

/// Arbitrary (not necessarily nice) tree decomposition: bags plus undirected
/// tree edges between bag indices. Bag 0 becomes the root in make_nice.
struct TreeDecomp {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<int, int>> edges;
};

/// Empty result means the decomposition is nice and covers G.
std::vector<std::string> validate_nice(const NiceTreeDecomp& d, const Graph& g);
std::vector<std::string> validate_tree_decomp(const TreeDecomp& d, const Graph& g);

int width(const NiceTreeDecomp& d);
int width(const TreeDecomp& d);
bool has_join(const NiceTreeDecomp& d);

/// Same width, nice form, empty root bag. Throws Error on invalid input.
NiceTreeDecomp make_nice(const TreeDecomp& d, const Graph& g);

/// Decomposition induced by an elimination ordering (first = eliminated first).
TreeDecomp decomposition_from_ordering(const Graph& g, const std::vector<Vertex>& order);
/// Min-degree elimination heuristic.
TreeDecomp greedy_decomposition(const Graph& g);

struct ExactTreewidth {
    int width = 0;
    std::vector<Vertex> ordering;
    NiceTreeDecomp decomp;
};
/// Exact treewidth by dynamic programming over vertex subsets (n <= 12).
ExactTreewidth treewidth_exact(const Graph& g);

/// Width-2 path decomposition of the cycle 1-2-...-n-1 (no Join nodes).
NiceTreeDecomp cycle_decomp(int n);

/// `bag <id> <kind> [v...]`, `child <parent> <kid>`, `root <id>`;
/// kind is leaf | intro:<v> | forget:<v> | join. Ids are 0..N-1.
NiceTreeDecomp read_decomp(std::istream& in);
void write_decomp(std::ostream& out, const NiceTreeDecomp& d);

} // namespace homforge
