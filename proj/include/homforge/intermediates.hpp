#pragma once

#include "homforge/cnf.hpp"
#include "homforge/field.hpp"
#include "homforge/graph.hpp"
#include "homforge/ring.hpp"
#include "homforge/trunc_poly.hpp"
#include "homforge/var_label.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homforge {

enum class Family { Sat, VC, CIS, Clow, TDM };

std::string to_string(Family f);
/// Accepts sat, vc, cis, clow, 3dm (or tdm).
Family parse_family(const std::string& s);

/// Variable registry of the index-n family:
///   Sat:  X:i, and Yc:l1:l2:l3 for every ordered triple of the 2n literals
///   VC, CIS, Clow: X:a:b for a < b in 1..n, Yv:v
///   TDM:  X:a:b:c in part coordinates; Yv:a, Yv:n+b, Yv:2n+c
std::vector<VarLabel> family_variables(Family f, int n);

/// Largest index accepted by eval_definitional.
int definitional_limit(Family f);

/// Hyperedge and vertex labels of the index-n 3DM family.
VarLabel tdm_edge(int a, int b, int c);
VarLabel tdm_vertex(int n, int part, int i); // part 0 = A, 1 = B, 2 = C

template <class V>
using Valuation = std::function<V(const VarLabel&)>;

/// The defining exponential sum, evaluated in `ring`; exponents are q-1.
/// Throws BudgetExceeded above definitional_limit.
template <RingContext R>
typename R::value_type eval_definitional(Family f, int n, std::uint64_t q, const R& ring,
                                         const Valuation<typename R::value_type>& value);

/// Polynomial-time evaluation over F_q using the 0/1 reduction.
FieldElem eval_fast(Family f, int n, const Field& field, const Valuation<FieldElem>& value);

/// Sum over head-minimal closed walks of length n of the product of edge
/// weights, via [A_i A_{i+1}^{n-2} A_i]_{i,i}. weights is n x n, symmetric,
/// indexed from 0, diagonal ignored.
FieldElem clow_matrix_sum(const Field& field, const std::vector<std::vector<FieldElem>>& weights);

enum class ProjValue { Zero, One, Z, T };

/// Substitution of every family variable by 0, 1, z or t. Variables absent
/// from `values` take `fallback`.
struct ProjectionSpec {
    Family family = Family::VC;
    int n = 0;
    std::map<VarLabel, ProjValue> values;
    ProjValue fallback = ProjValue::One;

    ProjValue operator()(const VarLabel& v) const;
};

/// Y_c -> t for clauses of the formula, everything else -> 1.
ProjectionSpec standard_projection(const Cnf& phi);
/// VC, CIS, Clow: Y_v -> t, X_e -> z for edges of A, other X_e -> 1.
ProjectionSpec standard_projection(Family f, const Graph& a);
/// Y_v -> t, X_e -> z for hyperedges of H, other X_e -> `absent`.
ProjectionSpec standard_projection(const Hypergraph3& h, ProjValue absent = ProjValue::One);

struct CoefficientQuery {
    TruncCaps target;          // the designated coefficient z^dz t^dt
    TruncCaps caps;            // evaluation caps (>= target)
    FieldElem value;           // the coefficient
    std::string relation;      // what the coefficient counts, mod p
};

/// Coefficient of t^{m(q-1)}: satisfying assignments mod p.
CoefficientQuery count_via_coefficient(const Cnf& phi, const Field& field, std::optional<TruncCaps> caps = {});
/// VC (size-k covers), CIS (k-cliques, k != 1), Clow (twice the number of
/// Hamiltonian cycles for n >= 3).
CoefficientQuery count_via_coefficient(Family f, const Graph& a, int k, const Field& field,
                                       std::optional<TruncCaps> caps = {});
/// Perfect 3D matchings; absent hyperedges are projected to 0.
CoefficientQuery count_via_coefficient(const Hypergraph3& h, const Field& field, std::optional<TruncCaps> caps = {});

} // namespace homforge
