#pragma once
// Shared helpers for the unit and acceptance tests. The brute-force routines
// here deliberately avoid the library's search code.

#include "homforge/circuit.hpp"
#include "homforge/cnf.hpp"
#include "homforge/field.hpp"
#include "homforge/graph.hpp"
#include "homforge/gadget_search.hpp"

#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace hf_test {

using namespace homforge;

inline std::string data_path(const std::string& name) { return std::string(HOMFORGE_TEST_DATA) + "/" + name; }

template <class T, class Reader>
T load(const std::string& name, Reader reader) {
    std::ifstream in(data_path(name));
    if (!in)
        throw Error("missing fixture " + name);
    return reader(in);
}

inline GadgetTriple fixture_triple() { return load<GadgetTriple>("triple.gad", read_gadget); }
inline GadgetTriple fixture_pair() { return load<GadgetTriple>("pair.gad", read_gadget); }

inline Graph random_graph(int n, double density, std::mt19937_64& rng) {
    Graph g(n);
    std::bernoulli_distribution coin(density);
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

inline FieldElem random_elem(const Field& f, std::mt19937_64& rng) {
    return f.element(std::uniform_int_distribution<std::uint64_t>(0, f.q() - 1)(rng));
}

/// Every map V(G) -> V(H) in odometer order, filtered by edge preservation.
inline std::vector<std::vector<int>> brute_homs(const Graph& g, const Graph& h) {
    std::vector<std::vector<int>> out;
    const int n = g.n();
    if (n == 0)
        return {{}};
    if (h.n() == 0)
        return out;
    std::vector<int> map(n, 1);
    while (true) {
        bool ok = true;
        for (const auto& [u, v] : g.edges())
            if (!h.has_edge(map[u - 1], map[v - 1])) {
                ok = false;
                break;
            }
        if (ok)
            out.push_back(map);
        int i = n - 1;
        while (i >= 0 && map[i] == h.n())
            map[i--] = 1;
        if (i < 0)
            break;
        ++map[i];
    }
    return out;
}

/// Sum over homs of prod_u Z(u, phi(u)) * prod_{uv} Y(phi(u), phi(v)).
inline FieldElem brute_hom_sum(const Graph& g, const std::vector<std::vector<int>>& homs, const Field& f,
                               const std::function<FieldElem(const VarLabel&)>& value) {
    FieldElem total = f.zero();
    for (const auto& m : homs) {
        FieldElem term = f.one();
        for (int u = 1; u <= g.n(); ++u)
            term *= value(VarLabel::z(u, m[u - 1]));
        for (const auto& [u, v] : g.edges())
            term *= value(VarLabel::edge_y(m[u - 1], m[v - 1]));
        total += term;
    }
    return total;
}

inline Cnf random_cnf(int n, int m, std::mt19937_64& rng) {
    Cnf phi;
    phi.n = n;
    std::uniform_int_distribution<int> var(1, n);
    std::bernoulli_distribution neg(0.5);
    for (int i = 0; i < m; ++i) {
        std::array<int, 3> c{};
        for (int& l : c)
            l = neg(rng) ? -var(rng) : var(rng);
        phi.clauses.push_back(c);
    }
    return phi;
}

inline Hypergraph3 random_hypergraph(int n, double density, std::mt19937_64& rng) {
    Hypergraph3 h(n);
    std::bernoulli_distribution coin(density);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                if (coin(rng))
                    h.add_edge(a, b, c);
    return h;
}

inline const std::vector<const Field*>& small_fields() {
    static const std::vector<const Field*> fields{&Field::get(2), &Field::get(3), &Field::get(2, 2),
                                                  &Field::get(5)};
    return fields;
}

} // namespace hf_test
