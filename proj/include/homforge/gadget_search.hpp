#pragma once

#include "homforge/graph.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace homforge {

/// A rigid building block with its marked vertices: left and right
/// attachment points and (for I_1, I_2) the parent attachment point.
struct Block {
    Graph g;
    Vertex l = 0;
    Vertex r = 0;
    Vertex p = 0;
    friend bool operator==(const Block&, const Block&) = default;
};

/// I[0..2] = I_0, I_1, I_2. A pair only fills I[1] and I[2].
struct GadgetTriple {
    std::array<Block, 3> I;
    int c_max = 0;
    bool pair_only = false;

    int max_block_size() const;
    friend bool operator==(const GadgetTriple&, const GadgetTriple&) = default;
};

enum class GadgetNeed { Pair, Triple };

struct SearchOptions {
    int max_n = 10;
    int exhaustive_max_n = 8;
    std::uint64_t seed = 1;
    std::size_t samples_per_n = 200'000;
};

struct SearchStats {
    std::vector<std::size_t> graphs_examined; // index n
    std::vector<std::size_t> rigid_found;     // index n
};

/// Connected, non-bipartite, rigid, pairwise incomparable blocks with the
/// lowest-numbered marks and c_max = largest block + 1. Throws Error when no
/// family exists within max_n.
GadgetTriple search_gadgets(GadgetNeed need, const SearchOptions& opts = {}, SearchStats* stats = nullptr);

/// Rigid connected non-bipartite graphs on exactly n vertices, one per
/// isomorphism class, found by exhaustive generation (n <= 8).
std::vector<Graph> rigid_graphs_exhaustive(int n);

/// Canonical adjacency code (upper triangle, maximised over vertex
/// permutations consistent with a degree refinement). n <= 11.
std::uint64_t canonical_code(const Graph& g);

/// Re-runs every predicate; returns the list of failures (empty when valid).
std::vector<std::string> certify(const GadgetTriple& t);

/// Text format:
///   kind triple|pair
///   cmax <c>
///   block <i> <n>        followed by `e <u> <v>` lines
///   mark <i> <l> <r> [<p>]
GadgetTriple read_gadget(std::istream& in);
void write_gadget(std::ostream& out, const GadgetTriple& t);

} // namespace homforge
