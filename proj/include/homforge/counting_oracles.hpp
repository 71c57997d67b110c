#pragma once

#include "homforge/cnf.hpp"
#include "homforge/field.hpp"
#include "homforge/graph.hpp"
#include "homforge/sparse_poly.hpp"

#include <vector>

namespace homforge {

/// An exact count together with its image in the field (modulo the
/// characteristic).
struct CountResult {
    BigInt exact;
    FieldElem modp;
};

CountResult make_count(const BigInt& exact, const Field& field);

/// Satisfying assignments over all 2^n assignments; n <= 24.
CountResult count_sat3(const Cnf& phi, const Field& field);
/// Vertex covers of size exactly k; |V| <= 16.
CountResult count_vc(const Graph& a, int k, const Field& field);
/// Cliques of size exactly k; |V| <= 16.
CountResult count_clique(const Graph& a, int k, const Field& field);
/// Independent sets of size exactly k; |V| <= 16.
CountResult count_independent(const Graph& a, int k, const Field& field);
/// Hamiltonian cycles as undirected vertex cycles (up to rotation and
/// reflection); |V| <= 12. Graphs with fewer than 3 vertices have none.
CountResult count_hc(const Graph& a, const Field& field);
/// Perfect matchings of a tripartite hypergraph; part size <= 3.
CountResult count_3dm(const Hypergraph3& h, const Field& field);
/// Clows of length n in A: sequences v_0 < v_j (j > 0), consecutive vertices
/// adjacent, closing edge (v_{n-1}, v_0) present. n <= 8.
CountResult count_clows(const Graph& a, int n, const Field& field);

/// Weighted version of count_clows over the complete graph: the sum over all
/// head-minimal closed walks of length n = weights.size() of the product of
/// edge weights, by explicit sequence enumeration. n <= 8.
FieldElem clow_sum_naive(const Field& field, const std::vector<std::vector<FieldElem>>& weights);

} // namespace homforge
