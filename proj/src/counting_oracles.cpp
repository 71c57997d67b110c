#include "homforge/counting_oracles.hpp"

#include "homforge/error.hpp"

#include <bit>
#include <functional>
#include <string>

namespace homforge {

namespace {

void budget(bool ok, const std::string& what, std::size_t size) {
    if (!ok)
        throw BudgetExceeded(what, size);
}

std::vector<std::uint32_t> adjacency_masks(const Graph& a) {
    std::vector<std::uint32_t> m(a.n(), 0);
    for (auto [u, v] : a.edges()) {
        m[u - 1] |= 1u << (v - 1);
        m[v - 1] |= 1u << (u - 1);
    }
    return m;
}

// Head-minimal closed walks of length n over vertices 0..size-1; `step`
// returns false for a forbidden move and accumulates otherwise.
template <class Acc, class Step>
void for_each_clow(int size, int n, Acc start, Step step, const std::function<void(const Acc&)>& done) {
    std::vector<int> walk(n);
    std::function<void(int, const Acc&)> rec = [&](int j, const Acc& acc) {
        if (j == n) {
            Acc closed = acc;
            if (step(closed, walk[n - 1], walk[0]))
                done(closed);
            return;
        }
        for (int v = walk[0] + 1; v < size; ++v) {
            if (v == walk[j - 1])
                continue;
            Acc next = acc;
            if (!step(next, walk[j - 1], v))
                continue;
            walk[j] = v;
            rec(j + 1, next);
        }
    };
    for (int h = 0; h < size; ++h) {
        walk[0] = h;
        rec(1, start);
    }
}

} // namespace

CountResult make_count(const BigInt& exact, const Field& field) {
    return CountResult{exact, field.from_int(static_cast<std::int64_t>(exact % field.p()))};
}

CountResult count_sat3(const Cnf& phi, const Field& field) {
    budget(phi.n <= 24, "count_sat3 enumerates 2^n assignments; n is limited to 24",
           static_cast<std::size_t>(phi.n));
    std::uint64_t count = 0;
    std::vector<bool> a(phi.n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << phi.n); ++bits) {
        for (int i = 0; i < phi.n; ++i)
            a[i] = (bits >> i) & 1u;
        count += phi.satisfied_by(a) ? 1 : 0;
    }
    return make_count(BigInt(count), field);
}

CountResult count_independent(const Graph& a, int k, const Field& field) {
    budget(a.n() <= 16, "subset enumeration is limited to 16 vertices", static_cast<std::size_t>(a.n()));
    auto adj = adjacency_masks(a);
    std::uint64_t count = 0;
    for (std::uint32_t s = 0; s < (1u << a.n()); ++s) {
        if (std::popcount(s) != k)
            continue;
        bool ok = true;
        for (int v = 0; v < a.n() && ok; ++v)
            if ((s >> v) & 1u)
                ok = (adj[v] & s) == 0;
        count += ok ? 1 : 0;
    }
    return make_count(BigInt(count), field);
}

CountResult count_vc(const Graph& a, int k, const Field& field) {
    budget(a.n() <= 16, "subset enumeration is limited to 16 vertices", static_cast<std::size_t>(a.n()));
    std::uint64_t count = 0;
    for (std::uint32_t s = 0; s < (1u << a.n()); ++s) {
        if (std::popcount(s) != k)
            continue;
        bool ok = true;
        for (auto [u, v] : a.edges())
            if (!((s >> (u - 1)) & 1u) && !((s >> (v - 1)) & 1u)) {
                ok = false;
                break;
            }
        count += ok ? 1 : 0;
    }
    return make_count(BigInt(count), field);
}

CountResult count_clique(const Graph& a, int k, const Field& field) {
    budget(a.n() <= 16, "subset enumeration is limited to 16 vertices", static_cast<std::size_t>(a.n()));
    auto adj = adjacency_masks(a);
    std::uint64_t count = 0;
    for (std::uint32_t s = 0; s < (1u << a.n()); ++s) {
        if (std::popcount(s) != k)
            continue;
        bool ok = true;
        for (int v = 0; v < a.n() && ok; ++v)
            if ((s >> v) & 1u)
                ok = (s & ~(1u << v) & ~adj[v]) == 0;
        count += ok ? 1 : 0;
    }
    return make_count(BigInt(count), field);
}

CountResult count_hc(const Graph& a, const Field& field) {
    const int n = a.n();
    budget(n <= 12, "Hamiltonian cycle enumeration is limited to 12 vertices", static_cast<std::size_t>(n));
    if (n < 3)
        return make_count(0, field);
    // Start at vertex 1; each undirected cycle appears once per direction.
    std::uint64_t directed = 0;
    std::vector<bool> used(n + 1, false);
    used[1] = true;
    std::function<void(Vertex, int)> rec = [&](Vertex v, int depth) {
        if (depth == n) {
            directed += a.has_edge(v, 1) ? 1 : 0;
            return;
        }
        for (Vertex w : a.neighbors(v)) {
            if (used[w])
                continue;
            used[w] = true;
            rec(w, depth + 1);
            used[w] = false;
        }
    };
    rec(1, 1);
    return make_count(BigInt(directed / 2), field);
}

CountResult count_3dm(const Hypergraph3& h, const Field& field) {
    const int n = h.n();
    budget(n <= 3, "3D matching enumeration is limited to part size 3", static_cast<std::size_t>(n));
    // Each A-vertex picks one hyperedge; B and C images must be permutations.
    std::uint64_t count = 0;
    std::function<void(int, std::uint32_t, std::uint32_t)> rec = [&](int a, std::uint32_t bs, std::uint32_t cs) {
        if (a > n) {
            ++count;
            return;
        }
        for (const auto& e : h.edges()) {
            if (e[0] != a || ((bs >> e[1]) & 1u) || ((cs >> e[2]) & 1u))
                continue;
            rec(a + 1, bs | (1u << e[1]), cs | (1u << e[2]));
        }
    };
    rec(1, 0, 0);
    return make_count(BigInt(count), field);
}

CountResult count_clows(const Graph& a, int n, const Field& field) {
    budget(n <= 8, "clow enumeration is limited to length 8", static_cast<std::size_t>(n));
    if (n < 2)
        return make_count(0, field);
    std::uint64_t count = 0;
    for_each_clow<int>(
        a.n(), n, 0, [&](int&, int u, int v) { return a.has_edge(u + 1, v + 1); }, [&](const int&) { ++count; });
    return make_count(BigInt(count), field);
}

FieldElem clow_sum_naive(const Field& field, const std::vector<std::vector<FieldElem>>& weights) {
    const int n = static_cast<int>(weights.size());
    budget(n <= 8, "clow enumeration is limited to length 8", static_cast<std::size_t>(n));
    FieldElem total = field.zero();
    if (n < 2)
        return total;
    for_each_clow<FieldElem>(
        n, n, field.one(),
        [&](FieldElem& acc, int u, int v) {
            acc *= weights[u][v];
            return true;
        },
        [&](const FieldElem& w) { total += w; });
    return total;
}

} // namespace homforge
