#include "homforge/graph.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace homforge {

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) + 1) {
    if (n < 0)
        throw Error("negative vertex count");
    matrix_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            g.add_edge(u, v);
    return g;
}

Graph Graph::cycle(int n) {
    if (n < 3)
        throw Error("a cycle needs at least 3 vertices");
    Graph g(n);
    for (int u = 1; u <= n; ++u)
        g.add_edge(u, u % n + 1);
    return g;
}

Graph Graph::path(int n) {
    Graph g(n);
    for (int u = 1; u < n; ++u)
        g.add_edge(u, u + 1);
    return g;
}

bool Graph::add_edge(Vertex u, Vertex v) {
    if (u == v)
        throw Error("self-loop at vertex " + std::to_string(u));
    if (u < 1 || v < 1 || u > n_ || v > n_)
        throw Error("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range 1.." +
                    std::to_string(n_));
    if (matrix_[idx(u, v)])
        return false;
    matrix_[idx(u, v)] = matrix_[idx(v, u)] = 1;
    Edge e{std::min(u, v), std::max(u, v)};
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
    auto& au = adj_[u];
    au.insert(std::lower_bound(au.begin(), au.end(), v), v);
    auto& av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    return true;
}

Vertex Graph::add_vertex() {
    const int old = n_;
    std::vector<std::uint8_t> m(static_cast<std::size_t>(old + 1) * (old + 1), 0);
    for (int u = 0; u < old; ++u)
        std::copy_n(matrix_.begin() + u * old, old, m.begin() + u * (old + 1));
    matrix_ = std::move(m);
    ++n_;
    adj_.emplace_back();
    return n_;
}

Graph complement(const Graph& g) {
    Graph c(g.n());
    for (int u = 1; u <= g.n(); ++u)
        for (int v = u + 1; v <= g.n(); ++v)
            if (!g.has_edge(u, v))
                c.add_edge(u, v);
    return c;
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
    Graph s(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.has_edge(vertices[i], vertices[j]))
                s.add_edge(static_cast<int>(i + 1), static_cast<int>(j + 1));
    return s;
}

namespace {

std::vector<int> bfs(const Graph& g, Vertex src) {
    std::vector<int> d(static_cast<std::size_t>(g.n()) + 1, -1);
    std::deque<Vertex> queue{src};
    d[src] = 0;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.neighbors(u))
            if (d[w] < 0) {
                d[w] = d[u] + 1;
                queue.push_back(w);
            }
    }
    return d;
}

} // namespace

bool is_connected(const Graph& g) {
    if (g.n() <= 1)
        return true;
    auto d = bfs(g, 1);
    return std::none_of(d.begin() + 1, d.end(), [](int x) { return x < 0; });
}

bool is_bipartite(const Graph& g) {
    std::vector<int> color(static_cast<std::size_t>(g.n()) + 1, -1);
    for (Vertex s = 1; s <= g.n(); ++s) {
        if (color[s] >= 0)
            continue;
        color[s] = 0;
        std::deque<Vertex> queue{s};
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            for (Vertex w : g.neighbors(u)) {
                if (color[w] < 0) {
                    color[w] = 1 - color[u];
                    queue.push_back(w);
                } else if (color[w] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::vector<std::vector<int>> distances(const Graph& g) {
    std::vector<std::vector<int>> d(static_cast<std::size_t>(g.n()) + 1);
    for (Vertex u = 1; u <= g.n(); ++u)
        d[u] = bfs(g, u);
    return d;
}

Hypergraph3::Hypergraph3(int n) : n_(n) {
    if (n < 0)
        throw Error("negative part size");
}

Hypergraph3 Hypergraph3::complete(int n) {
    Hypergraph3 h(n);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                h.add_edge(a, b, c);
    return h;
}

bool Hypergraph3::has_edge(const Triple& t) const { return std::binary_search(edges_.begin(), edges_.end(), t); }

bool Hypergraph3::add_edge(int a, int b, int c) {
    for (int x : {a, b, c})
        if (x < 1 || x > n_)
            throw Error("hyperedge coordinate " + std::to_string(x) + " out of range 1.." + std::to_string(n_));
    Triple t{a, b, c};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), t);
    if (it != edges_.end() && *it == t)
        return false;
    edges_.insert(it, t);
    return true;
}

namespace {

struct LineReader {
    std::istream& in;
    std::size_t lineno = 0;

    // Next non-comment line split into tokens; empty at EOF.
    std::vector<std::string> next() {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            std::vector<std::string> tok;
            std::string t;
            while (ss >> t)
                tok.push_back(t);
            if (tok.empty() || tok[0][0] == '#' || tok[0] == "c")
                continue;
            return tok;
        }
        return {};
    }

    long parse_int(const std::string& s) const {
        long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParseError("expected an integer, got '" + s + "'", lineno);
        return v;
    }
};

} // namespace

Graph read_graph(std::istream& in) {
    LineReader r{in};
    auto tok = r.next();
    if (tok.size() != 3 || tok[0] != "p")
        throw ParseError("expected header 'p <n> <m>'", r.lineno);
    long n = r.parse_int(tok[1]);
    long m = r.parse_int(tok[2]);
    if (n < 0 || m < 0)
        throw ParseError("negative size in header", r.lineno);
    Graph g(static_cast<int>(n));
    long seen = 0;
    while (!(tok = r.next()).empty()) {
        if (tok.size() != 3 || tok[0] != "e")
            throw ParseError("expected 'e <u> <v>'", r.lineno);
        long u = r.parse_int(tok[1]);
        long v = r.parse_int(tok[2]);
        try {
            if (!g.add_edge(static_cast<int>(u), static_cast<int>(v)))
                throw ParseError("duplicate edge", r.lineno);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), r.lineno);
        }
        ++seen;
    }
    if (seen != m)
        throw ParseError("header declares " + std::to_string(m) + " edges, found " + std::to_string(seen), r.lineno);
    return g;
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "p " << g.n() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges())
        out << "e " << u << ' ' << v << '\n';
}

Hypergraph3 read_hypergraph(std::istream& in) {
    LineReader r{in};
    auto tok = r.next();
    if (tok.size() != 2 || tok[0] != "h")
        throw ParseError("expected header 'h <n>'", r.lineno);
    long n = r.parse_int(tok[1]);
    if (n < 0)
        throw ParseError("negative part size", r.lineno);
    Hypergraph3 h(static_cast<int>(n));
    while (!(tok = r.next()).empty()) {
        if (tok.size() != 4 || tok[0] != "t")
            throw ParseError("expected 't <a> <b> <c>'", r.lineno);
        try {
            if (!h.add_edge(static_cast<int>(r.parse_int(tok[1])), static_cast<int>(r.parse_int(tok[2])),
                            static_cast<int>(r.parse_int(tok[3]))))
                throw ParseError("duplicate hyperedge", r.lineno);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), r.lineno);
        }
    }
    return h;
}

void write_hypergraph(std::ostream& out, const Hypergraph3& h) {
    out << "h " << h.n() << '\n';
    for (const auto& t : h.edges())
        out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

} // namespace homforge
