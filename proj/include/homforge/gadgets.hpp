#pragma once

#include "homforge/circuit.hpp"
#include "homforge/field.hpp"
#include "homforge/gadget_search.hpp"
#include "homforge/graph.hpp"
#include "homforge/hom_compiler.hpp"
#include "homforge/sparse_poly.hpp"
#include "homforge/tree_decomp.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace homforge {

/// Edge weight in a gadget or branching program: a variable, or the
/// constant 1 when empty.
using EdgeLabel = std::optional<VarLabel>;

std::string to_string(const EdgeLabel& l);

struct BPArc {
    int layer = 1; // arc from layer `layer` to layer `layer + 1`
    int from = 1;
    int to = 1;
    EdgeLabel label;
    friend bool operator==(const BPArc&, const BPArc&) = default;
};

/// Layered branching program. Layers are 1..L, nodes within a layer 1..size.
/// The source sits in layer 1 and the sink in layer L.
struct LayeredBP {
    std::vector<int> layer_sizes;
    std::vector<BPArc> arcs;
    int source = 1;
    int sink = 1;

    int layers() const { return static_cast<int>(layer_sizes.size()); }
    int width() const;
    int num_nodes() const;
    /// Graph vertex of (layer, index), numbering layer by layer from 1.
    Vertex vertex_of(int layer, int index) const;

    friend bool operator==(const LayeredBP&, const LayeredBP&) = default;
};

/// Structural problems (empty when well formed): arcs between consecutive
/// layers only, no parallel arcs, endpoints in range, no use of the reserved
/// variable y.
std::vector<std::string> validate_bp(const LayeredBP& bp);

/// Sum over source-sink paths of the product of arc labels.
IntPoly bp_polynomial(const LayeredBP& bp);
BigInt count_bp_paths(const LayeredBP& bp);
/// Undirected graph underlying the program (vertex_of numbering).
Graph bp_graph(const LayeredBP& bp);

/// Random program with fresh labels X:1, X:2, ... and at least one
/// source-sink path. Layer sizes are drawn from 1..max_width.
LayeredBP random_bp(int layers, int max_width, std::mt19937_64& rng);

/// `layers L`, `node l i`, `arc l i j label` (label: variable or 1),
/// `source i`, `sink i`.
LayeredBP read_bp(std::istream& in);
void write_bp(std::ostream& out, const LayeredBP& bp);

/// A block copy inside a gadget graph: template vertex i sits at offset + i.
struct BlockCopy {
    int kind = 0;        // index into the triple (0, 1, 2)
    Vertex offset = 0;
    int size = 0;
    int level = 0;
    int node = -1;       // source node (tree node or retained gate), if any
};

/// A connecting path from `from` to `to`; interior excludes both ends.
struct PathSegment {
    Vertex from = 0;
    Vertex to = 0;
    int from_block = -1;
    int to_block = -1;
    std::vector<Vertex> interior;
    std::size_t edges() const { return interior.size() + 1; }
};

struct GadgetGraph {
    Graph graph;
    std::vector<BlockCopy> blocks;
    std::vector<PathSegment> paths;
    std::map<Edge, EdgeLabel> labels; // unlisted edges carry 1
    int c_max = 0;
    std::string path_convention;      // how c_max measures a connecting path
    // Designated vertices: a, b in G_k; s, t in B.
    Vertex a = 0, b = 0, s = 0, t = 0;

    EdgeLabel label(Vertex u, Vertex v) const;
    Vertex block_vertex(int block, Vertex template_vertex) const { return blocks.at(block).offset + template_vertex; }
};

/// Complete binary tree with m leaves: root I_0, then I_1 and I_2 on
/// alternating levels; parent marks l / r joined to child mark p by paths
/// with c_max interior vertices.
GadgetGraph build_Gm(int m, const GadgetTriple& triple);

/// I_1(u) - c_max edges - a - (k-1) edges - b - c_max edges - (v)I_2 with
/// u = I_1.p and v = I_2.p.
GadgetGraph build_Gk(int k, const GadgetTriple& pair, int c_max);

/// Tree decomposition following the block structure (one bag per block, two
/// vertices per path edge). Width is max(block size - 1, 1). A single path
/// between two blocks gives a Join-free decomposition.
NiceTreeDecomp gadget_decomp(const GadgetGraph& g);

enum class EmbedMode { Gadget, Cycle };

struct Embedding {
    GadgetGraph b;                           // the subgraph B with its labels
    int h_vertices = 0;                      // size of the complete target
    std::map<VarLabel, ProjTarget> assignment; // over every Ye:a:b of K_h
};

/// Gadget mode: I_1(u) - c_max edges - (s) BP (t) - c_max edges - (v) I_2.
/// Cycle mode: the BP graph plus the edge (s, t) weighted by y; needs an odd
/// number of layers >= 3. h_vertices = 0 means "exactly |V(B)|".
Embedding embed_bp(const LayeredBP& bp, EmbedMode mode, const GadgetTriple* pair = nullptr, int c_max = 0,
                   int h_vertices = 0);

/// Sum over Hom(G, B) of the product of the labels of the image edges.
IntPoly hom_polynomial(const Graph& g, const GadgetGraph& b, bool distance_pruning = true);

struct CycleIdentityReport {
    int layers = 0;
    BigInt factor;            // 2 * layers
    std::size_t homs = 0;
    BigInt paths;
    IntPoly f, g;
    bool identity_holds = false; // f == factor * y * g over the integers
    bool char_two = false;
    int recovery_layers = 0;     // layers of the program used for recovery
    bool recovered = false;      // g recovered over the field
    std::string note;

    bool ok() const { return identity_holds && (char_two || recovered); }
};

/// Enumerates Hom(C_L, B) for the cycle embedding and checks
/// f = 2L * y * g. Recovery over `field` substitutes y = (2L)^{-1}; when the
/// characteristic divides L the program is padded to L + 2 layers first.
CycleIdentityReport verify_cycle_identity(const LayeredBP& bp, const Field& field);

struct GadgetBijectionReport {
    std::size_t homs = 0;
    BigInt paths;
    bool count_matches = false;
    bool p1 = false, p2 = false; // blocks map identically
    bool ends = false;           // a -> s and b -> t
    bool monomials_match = false;
    IntPoly f, g;

    bool ok() const { return count_matches && p1 && p2 && ends && monomials_match; }
};

/// G_L -> B_L for the gadget embedding, L = number of layers, with
/// c_max = max(|I_1|, |I_2|). Throws PreconditionError when the pair fails
/// certification or L does not exceed the width.
GadgetBijectionReport verify_gadget_bijection(const LayeredBP& bp, const GadgetTriple& pair);

/// Normal-form problems of a circuit for the J_n construction (empty when
/// acceptable): output is a product, products have two sum children, sums
/// have product or input children without repeats, all inputs at the same
/// product depth, depth >= 1, multiplicatively disjoint, no constants.
std::vector<std::string> normal_form_violations(const Circuit& c);

struct JnGraph {
    GadgetGraph gadget;
    int depth = 0; // product depth; G_m has m = 2^depth leaves
    std::size_t retained_nodes = 0;
};

/// J'_n and J_n. With `swap_levels` the I_1 / I_2 alternation is inverted
/// below the root (fault injection). Throws PreconditionError listing
/// normal-form violations.
JnGraph build_Jn(const Circuit& c, const GadgetTriple& triple, bool swap_levels = false);

using MonomialMultiset = std::map<Monomial, BigInt>;

struct ParseHomReport {
    int depth = 0;
    std::size_t parse_trees = 0;
    std::size_t homs = 0;
    MonomialMultiset from_trees, from_homs;
    bool ok() const { return from_trees == from_homs; }
};

ParseHomReport verify_parse_hom_bijection(const Circuit& c, const GadgetTriple& triple, bool swap_levels = false,
                                          std::size_t hom_cap = 1'000'000);

} // namespace homforge
