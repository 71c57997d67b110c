#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace homforge {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 1..n. Edges are stored canonically
/// (u < v), sorted, without duplicates.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    static Graph complete(int n);
    static Graph cycle(int n);
    static Graph path(int n);

    int n() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adj_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
    bool has_edge(Vertex u, Vertex v) const noexcept {
        return u >= 1 && v >= 1 && u <= n_ && v <= n_ && matrix_[idx(u, v)];
    }

    /// Adds {u,v}; returns false if it was already present. Throws on
    /// self-loops and out-of-range vertices.
    bool add_edge(Vertex u, Vertex v);
    /// Appends a fresh isolated vertex and returns its id.
    Vertex add_vertex();

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t idx(Vertex u, Vertex v) const noexcept {
        return static_cast<std::size_t>(u - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v - 1);
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adj_{1}; // index 0 unused
    std::vector<std::uint8_t> matrix_;
};

Graph complement(const Graph& g);
/// Subgraph induced on `vertices` (renumbered 1..k in the given order).
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);
/// dist[u][v] for 1 <= u,v <= n; -1 when unreachable.
std::vector<std::vector<int>> distances(const Graph& g);

/// Tripartite 3-uniform hypergraph with parts A, B, C each numbered 1..n.
class Hypergraph3 {
public:
    using Triple = std::array<int, 3>;

    Hypergraph3() = default;
    explicit Hypergraph3(int n);

    static Hypergraph3 complete(int n);

    int n() const noexcept { return n_; }
    const std::vector<Triple>& edges() const noexcept { return edges_; }
    bool has_edge(const Triple& t) const;
    bool add_edge(int a, int b, int c);

    friend bool operator==(const Hypergraph3&, const Hypergraph3&) = default;

private:
    int n_ = 0;
    std::vector<Triple> edges_;
};

/// `p <n> <m>` header then `e <u> <v>` lines; '#' and 'c' lines are comments.
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
/// `h <n>` header then `t <a> <b> <c>` lines.
Hypergraph3 read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph3& h);

} // namespace homforge
