#include "homforge/intermediates.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>

namespace homforge {

std::string to_string(Family f) {
    switch (f) {
    case Family::Sat:
        return "sat";
    case Family::VC:
        return "vc";
    case Family::CIS:
        return "cis";
    case Family::Clow:
        return "clow";
    case Family::TDM:
        return "3dm";
    }
    return "?";
}

Family parse_family(const std::string& s) {
    if (s == "sat")
        return Family::Sat;
    if (s == "vc")
        return Family::VC;
    if (s == "cis")
        return Family::CIS;
    if (s == "clow")
        return Family::Clow;
    if (s == "3dm" || s == "tdm")
        return Family::TDM;
    throw Error("unknown family '" + s + "' (expected sat, vc, cis, clow or 3dm)");
}

namespace {

std::vector<int> literals(int n) {
    std::vector<int> l;
    for (int i = 1; i <= n; ++i)
        l.push_back(i);
    for (int i = 1; i <= n; ++i)
        l.push_back(-i);
    return l;
}

void check_index(Family f, int n) {
    if (n < 1)
        throw PreconditionError("family index must be at least 1");
    if (n > definitional_limit(f))
        throw BudgetExceeded("definitional evaluation of " + to_string(f) + " is limited to n <= " +
                                 std::to_string(definitional_limit(f)) + "; use eval_fast instead",
                             static_cast<std::size_t>(n));
}

bool literal_true(int lit, std::uint32_t a) { return lit > 0 ? ((a >> (lit - 1)) & 1u) : !((a >> (-lit - 1)) & 1u); }

} // namespace

VarLabel tdm_edge(int a, int b, int c) { return VarLabel::x_hyper(a, b, c); }
VarLabel tdm_vertex(int n, int part, int i) { return VarLabel::vertex_y(part * n + i); }

std::vector<VarLabel> family_variables(Family f, int n) {
    std::vector<VarLabel> out;
    switch (f) {
    case Family::Sat: {
        for (int i = 1; i <= n; ++i)
            out.push_back(VarLabel::x(i));
        auto lits = literals(n);
        for (int a : lits)
            for (int b : lits)
                for (int c : lits)
                    out.push_back(VarLabel::clause_y(a, b, c));
        break;
    }
    case Family::VC:
    case Family::CIS:
    case Family::Clow:
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                out.push_back(VarLabel::x_edge(a, b));
        for (int v = 1; v <= n; ++v)
            out.push_back(VarLabel::vertex_y(v));
        break;
    case Family::TDM:
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                for (int c = 1; c <= n; ++c)
                    out.push_back(tdm_edge(a, b, c));
        for (int v = 1; v <= 3 * n; ++v)
            out.push_back(VarLabel::vertex_y(v));
        break;
    }
    return out;
}

int definitional_limit(Family f) {
    switch (f) {
    case Family::Sat:
        return 12;
    case Family::VC:
        return 12;
    case Family::CIS:
        return 12;
    case Family::Clow:
        return 10;
    case Family::TDM:
        return 2;
    }
    return 0;
}

template <RingContext R>
typename R::value_type eval_definitional(Family f, int n, std::uint64_t q, const R& ring,
                                         const Valuation<typename R::value_type>& value) {
    using V = typename R::value_type;
    check_index(f, n);
    auto powered = [&](const VarLabel& v) { return ring_pow(ring, value(v), q - 1); };
    V total = ring.from_int(0);

    switch (f) {
    case Family::Sat: {
        std::vector<V> xp;
        for (int i = 1; i <= n; ++i)
            xp.push_back(powered(VarLabel::x(i)));
        // Only clause factors different from 1 matter.
        std::vector<std::pair<std::array<int, 3>, V>> clauses;
        auto lits = literals(n);
        for (int a : lits)
            for (int b : lits)
                for (int c : lits) {
                    V y = powered(VarLabel::clause_y(a, b, c));
                    if (!ring.is_one(y))
                        clauses.push_back({{a, b, c}, std::move(y)});
                }
        for (std::uint32_t a = 0; a < (1u << n); ++a) {
            V term = ring.from_int(1);
            for (int i = 0; i < n; ++i)
                if ((a >> i) & 1u)
                    ring_mul_into(ring, term, xp[i]);
            for (const auto& [c, y] : clauses)
                if (literal_true(c[0], a) || literal_true(c[1], a) || literal_true(c[2], a))
                    ring_mul_into(ring, term, y);
            total = ring.add(total, term);
        }
        break;
    }
    case Family::VC: {
        std::vector<std::vector<V>> xp(n + 1, std::vector<V>(n + 1, ring.from_int(1)));
        std::vector<V> yp(n + 1, ring.from_int(1));
        for (int a = 1; a <= n; ++a) {
            yp[a] = powered(VarLabel::vertex_y(a));
            for (int b = a + 1; b <= n; ++b)
                xp[a][b] = xp[b][a] = powered(VarLabel::x_edge(a, b));
        }
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
            V term = ring.from_int(1);
            for (int a = 1; a <= n; ++a) {
                const bool ina = (s >> (a - 1)) & 1u;
                if (ina)
                    ring_mul_into(ring, term, yp[a]);
                for (int b = a + 1; b <= n; ++b)
                    if (ina || ((s >> (b - 1)) & 1u))
                        ring_mul_into(ring, term, xp[a][b]);
            }
            total = ring.add(total, term);
        }
        break;
    }
    case Family::CIS: {
        std::vector<std::pair<int, int>> edges;
        std::vector<V> xp;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b) {
                edges.emplace_back(a, b);
                xp.push_back(powered(VarLabel::x_edge(a, b)));
            }
        std::vector<V> yp(n + 1, ring.from_int(1));
        for (int v = 1; v <= n; ++v)
            yp[v] = powered(VarLabel::vertex_y(v));
        const std::size_t m = edges.size();
        if (n > 6) {
            // Same sum grouped by the touched vertex set S: the edge sets
            // inside S are prod_{e in S} (1 + x_e), and Moebius inversion over
            // subsets keeps those touching all of S.
            const std::size_t subsets = std::size_t{1} << n;
            std::vector<V> inside(subsets, ring.from_int(1));
            for (std::size_t s = 1; s < subsets; ++s) {
                int top = 0;
                while ((s >> (top + 1)) != 0)
                    ++top;
                const std::size_t rest = s & ~(std::size_t{1} << top);
                inside[s] = inside[rest];
                for (std::size_t e = 0; e < m; ++e)
                    if (edges[e].second == top + 1 && ((rest >> (edges[e].first - 1)) & 1u))
                        inside[s] = ring.mul(inside[s], ring.add(ring.from_int(1), xp[e]));
            }
            const V minus_one = ring.from_int(-1);
            for (int bit = 0; bit < n; ++bit)
                for (std::size_t s = 0; s < subsets; ++s)
                    if ((s >> bit) & 1u)
                        inside[s] = ring.add(inside[s], ring.mul(minus_one, inside[s ^ (std::size_t{1} << bit)]));
            for (std::size_t s = 0; s < subsets; ++s) {
                if (ring.is_zero(inside[s]))
                    continue;
                V term = inside[s];
                for (int v = 1; v <= n; ++v)
                    if ((s >> (v - 1)) & 1u)
                        ring_mul_into(ring, term, yp[v]);
                total = ring.add(total, term);
            }
            break;
        }
        for (std::uint32_t t = 0; t < (1u << m); ++t) {
            V term = ring.from_int(1);
            std::uint32_t touched = 0;
            for (std::size_t e = 0; e < m; ++e)
                if ((t >> e) & 1u) {
                    ring_mul_into(ring, term, xp[e]);
                    touched |= (1u << (edges[e].first - 1)) | (1u << (edges[e].second - 1));
                }
            for (int v = 1; v <= n; ++v)
                if ((touched >> (v - 1)) & 1u)
                    ring_mul_into(ring, term, yp[v]);
            total = ring.add(total, term);
        }
        break;
    }
    case Family::Clow: {
        if (n == 1)
            break; // a closed walk of length 1 needs a loop
        std::vector<std::vector<V>> xp(n + 1, std::vector<V>(n + 1, ring.from_int(1)));
        std::vector<V> yp(n + 1, ring.from_int(1));
        for (int a = 1; a <= n; ++a) {
            yp[a] = powered(VarLabel::vertex_y(a));
            for (int b = a + 1; b <= n; ++b)
                xp[a][b] = xp[b][a] = powered(VarLabel::x_edge(a, b));
        }
        // Walks h, v_1, ..., v_{n-1}, h with every v_j > h, aggregated by
        // (current vertex, set of visited non-head vertices).
        for (int h = 1; h < n; ++h) {
            const int u = n - h; // candidate vertices h+1..n, bit i <-> vertex h+1+i
            const std::size_t states = (std::size_t{1} << u);
            std::vector<std::vector<std::optional<V>>> cur(states, std::vector<std::optional<V>>(u));
            for (int i = 0; i < u; ++i)
                cur[std::size_t{1} << i][i] = xp[h][h + 1 + i];
            for (int step = 2; step <= n - 1; ++step) {
                std::vector<std::vector<std::optional<V>>> next(states, std::vector<std::optional<V>>(u));
                for (std::size_t s = 0; s < states; ++s)
                    for (int i = 0; i < u; ++i) {
                        if (!cur[s][i])
                            continue;
                        for (int j = 0; j < u; ++j) {
                            if (j == i)
                                continue;
                            V w = ring.mul(*cur[s][i], xp[h + 1 + i][h + 1 + j]);
                            auto& slot = next[s | (std::size_t{1} << j)][j];
                            slot = slot ? ring.add(*slot, w) : std::move(w);
                        }
                    }
                cur = std::move(next);
            }
            for (std::size_t s = 0; s < states; ++s) {
                std::optional<V> sum;
                for (int i = 0; i < u; ++i)
                    if (cur[s][i]) {
                        V w = ring.mul(*cur[s][i], xp[h + 1 + i][h]);
                        sum = sum ? ring.add(*sum, w) : std::move(w);
                    }
                if (!sum)
                    continue;
                V term = ring.mul(*sum, yp[h]);
                for (int i = 0; i < u; ++i)
                    if ((s >> i) & 1u)
                        ring_mul_into(ring, term, yp[h + 1 + i]);
                total = ring.add(total, term);
            }
        }
        break;
    }
    case Family::TDM: {
        std::vector<std::array<int, 3>> edges;
        std::vector<V> xp;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                for (int c = 1; c <= n; ++c) {
                    edges.push_back({a, b, c});
                    xp.push_back(powered(tdm_edge(a, b, c)));
                }
        std::vector<V> yp;
        for (int v = 1; v <= 3 * n; ++v)
            yp.push_back(powered(VarLabel::vertex_y(v)));
        const std::size_t m = edges.size();
        for (std::uint32_t sel = 0; sel < (1u << m); ++sel) {
            V term = ring.from_int(1);
            std::uint32_t touched = 0;
            for (std::size_t e = 0; e < m; ++e)
                if ((sel >> e) & 1u) {
                    ring_mul_into(ring, term, xp[e]);
                    for (int part = 0; part < 3; ++part)
                        touched |= 1u << (part * n + edges[e][part] - 1);
                }
            for (int v = 0; v < 3 * n; ++v)
                if ((touched >> v) & 1u)
                    ring_mul_into(ring, term, yp[v]);
            total = ring.add(total, term);
        }
        break;
    }
    }
    return total;
}

template FieldElem eval_definitional<FieldRing>(Family, int, std::uint64_t, const FieldRing&, const Valuation<FieldElem>&);
template TruncPoly eval_definitional<TruncRing>(Family, int, std::uint64_t, const TruncRing&, const Valuation<TruncPoly>&);
template FieldPoly eval_definitional<FieldPolyRing>(Family, int, std::uint64_t, const FieldPolyRing&,
                                                    const Valuation<FieldPoly>&);
template IntPoly eval_definitional<IntPolyRing>(Family, int, std::uint64_t, const IntPolyRing&,
                                                const Valuation<IntPoly>&);

FieldElem clow_matrix_sum(const Field& field, const std::vector<std::vector<FieldElem>>& weights) {
    const int n = static_cast<int>(weights.size());
    FieldElem total = field.zero();
    if (n < 2)
        return total;
    using Matrix = std::vector<std::vector<FieldElem>>;
    auto restricted = [&](int i) { // A_i over vertices i..n-1 (0-based)
        Matrix a(n, std::vector<FieldElem>(n, field.zero()));
        for (int r = i; r < n; ++r)
            for (int c = i; c < n; ++c)
                if (r != c)
                    a[r][c] = weights[r][c];
        return a;
    };
    auto mul = [&](const Matrix& x, const Matrix& y) {
        Matrix z(n, std::vector<FieldElem>(n, field.zero()));
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) {
                if (x[r][k].is_zero())
                    continue;
                for (int c = 0; c < n; ++c)
                    z[r][c] += x[r][k] * y[k][c];
            }
        return z;
    };
    for (int i = 0; i < n; ++i) {
        Matrix ai = restricted(i);
        // A_{i+1}^{n-2}, where A_{i+1}^0 is the identity on vertices i+1..n-1.
        Matrix p(n, std::vector<FieldElem>(n, field.zero()));
        for (int r = i + 1; r < n; ++r)
            p[r][r] = field.one();
        Matrix next = restricted(std::min(i + 1, n));
        for (int e = 0; e < n - 2; ++e)
            p = mul(p, next);
        Matrix full = mul(mul(ai, p), ai);
        total += full[i][i];
    }
    return total;
}

FieldElem eval_fast(Family f, int n, const Field& field, const Valuation<FieldElem>& value) {
    if (n < 1)
        throw PreconditionError("family index must be at least 1");
    auto nz = [&](const VarLabel& v) { return !value(v).is_zero(); };
    const FieldElem two = field.from_int(2);
    switch (f) {
    case Family::Sat: {
        // -1 unconstrained, else forced bit value
        std::vector<int> forced(n + 1, -1);
        bool conflict = false;
        auto force = [&](int i, int bit) {
            if (forced[i] >= 0 && forced[i] != bit)
                conflict = true;
            forced[i] = bit;
        };
        for (int i = 1; i <= n; ++i)
            if (!nz(VarLabel::x(i)))
                force(i, 0);
        auto lits = literals(n);
        for (int a : lits)
            for (int b : lits)
                for (int c : lits)
                    if (!nz(VarLabel::clause_y(a, b, c)))
                        for (int lit : {a, b, c})
                            force(std::abs(lit), lit > 0 ? 0 : 1);
        if (conflict)
            return field.zero();
        auto free_bits = std::count(forced.begin() + 1, forced.end(), -1);
        return two.pow(static_cast<std::uint64_t>(free_bits));
    }
    case Family::VC: {
        std::uint64_t full = 0;
        for (int v = 1; v <= n; ++v) {
            bool ok = nz(VarLabel::vertex_y(v));
            for (int w = 1; w <= n && ok; ++w)
                if (w != v)
                    ok = nz(VarLabel::x_edge(v, w));
            full += ok ? 1 : 0;
        }
        return two.pow(full);
    }
    case Family::CIS: {
        std::uint64_t edges = 0;
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (nz(VarLabel::vertex_y(a)) && nz(VarLabel::vertex_y(b)) && nz(VarLabel::x_edge(a, b)))
                    ++edges;
        return two.pow(edges);
    }
    case Family::Clow: {
        std::vector<std::vector<FieldElem>> w(n, std::vector<FieldElem>(n, field.zero()));
        for (int a = 1; a <= n; ++a)
            for (int b = a + 1; b <= n; ++b)
                if (nz(VarLabel::vertex_y(a)) && nz(VarLabel::vertex_y(b)) && nz(VarLabel::x_edge(a, b)))
                    w[a - 1][b - 1] = w[b - 1][a - 1] = field.one();
        return clow_matrix_sum(field, w);
    }
    case Family::TDM: {
        std::uint64_t edges = 0;
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                for (int c = 1; c <= n; ++c)
                    if (nz(tdm_edge(a, b, c)) && nz(tdm_vertex(n, 0, a)) && nz(tdm_vertex(n, 1, b)) &&
                        nz(tdm_vertex(n, 2, c)))
                        ++edges;
        return two.pow(edges);
    }
    }
    return field.zero();
}

ProjValue ProjectionSpec::operator()(const VarLabel& v) const {
    auto it = values.find(v);
    return it == values.end() ? fallback : it->second;
}

ProjectionSpec standard_projection(const Cnf& phi) {
    ProjectionSpec s;
    s.family = Family::Sat;
    s.n = phi.n;
    for (const auto& c : phi.clauses)
        s.values[VarLabel::clause_y(c[0], c[1], c[2])] = ProjValue::T;
    return s;
}

ProjectionSpec standard_projection(Family f, const Graph& a) {
    if (f != Family::VC && f != Family::CIS && f != Family::Clow)
        throw PreconditionError("graph projections exist for vc, cis and clow only");
    ProjectionSpec s;
    s.family = f;
    s.n = a.n();
    for (int v = 1; v <= a.n(); ++v)
        s.values[VarLabel::vertex_y(v)] = ProjValue::T;
    for (int u = 1; u <= a.n(); ++u)
        for (int v = u + 1; v <= a.n(); ++v)
            s.values[VarLabel::x_edge(u, v)] = a.has_edge(u, v) ? ProjValue::Z : ProjValue::One;
    return s;
}

ProjectionSpec standard_projection(const Hypergraph3& h, ProjValue absent) {
    ProjectionSpec s;
    s.family = Family::TDM;
    const int n = h.n();
    s.n = n;
    for (int v = 1; v <= 3 * n; ++v)
        s.values[VarLabel::vertex_y(v)] = ProjValue::T;
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            for (int c = 1; c <= n; ++c)
                s.values[tdm_edge(a, b, c)] = h.has_edge({a, b, c}) ? ProjValue::Z : absent;
    return s;
}

namespace {

CoefficientQuery extract(const ProjectionSpec& spec, const Field& field, TruncCaps target,
                         std::optional<TruncCaps> caps, std::string relation) {
    TruncCaps use = caps.value_or(target);
    if (use.dz < target.dz || use.dt < target.dt)
        throw PreconditionError("evaluation caps must reach the target degrees");
    TruncRing ring(field, use);
    const TruncPoly zero = ring.from_int(0), one = ring.from_int(1), z = ring.z(), t = ring.t();
    Valuation<TruncPoly> val = [&](const VarLabel& v) -> TruncPoly {
        switch (spec(v)) {
        case ProjValue::Zero:
            return zero;
        case ProjValue::One:
            return one;
        case ProjValue::Z:
            return z;
        case ProjValue::T:
            return t;
        }
        return one;
    };
    TruncPoly poly = eval_definitional(spec.family, spec.n, field.q(), ring, val);
    return CoefficientQuery{target, use, poly.coefficient(target.dz, target.dt), std::move(relation)};
}

std::size_t distinct_clauses(const Cnf& phi) {
    auto c = phi.clauses;
    std::sort(c.begin(), c.end());
    return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

} // namespace

CoefficientQuery count_via_coefficient(const Cnf& phi, const Field& field, std::optional<TruncCaps> caps) {
    const std::size_t m = distinct_clauses(phi);
    const std::size_t q1 = field.q() - 1;
    return extract(standard_projection(phi), field, {0, m * q1}, caps, "satisfying assignments");
}

CoefficientQuery count_via_coefficient(Family f, const Graph& a, int k, const Field& field,
                                       std::optional<TruncCaps> caps) {
    const std::size_t q1 = field.q() - 1;
    const std::size_t n = static_cast<std::size_t>(a.n());
    switch (f) {
    case Family::VC:
        if (k < 0 || k > a.n())
            throw PreconditionError("cover size k must lie in 0..n");
        return extract(standard_projection(f, a), field, {a.num_edges() * q1, static_cast<std::size_t>(k) * q1}, caps,
                       "vertex covers of size " + std::to_string(k));
    case Family::CIS: {
        if (k < 0 || k > a.n())
            throw PreconditionError("clique size k must lie in 0..n");
        if (k == 1)
            throw PreconditionError("the clique coefficient identity fails for k = 1: no edge set spans exactly one "
                                    "vertex, so the coefficient is always 0");
        const std::size_t kk = static_cast<std::size_t>(k);
        return extract(standard_projection(f, a), field, {kk * (kk - 1) / 2 * q1, kk * q1}, caps,
                       "cliques of size " + std::to_string(k));
    }
    case Family::Clow:
        if (a.n() < 3)
            throw PreconditionError("the Hamiltonian-cycle identity needs at least 3 vertices");
        return extract(standard_projection(f, a), field, {n * q1, n * q1}, caps,
                       "2 x Hamiltonian cycles (each cycle is traversed in both directions from its head)");
    default:
        throw PreconditionError("use the formula or hypergraph overload for " + to_string(f));
    }
}

CoefficientQuery count_via_coefficient(const Hypergraph3& h, const Field& field, std::optional<TruncCaps> caps) {
    const std::size_t q1 = field.q() - 1;
    const std::size_t n = static_cast<std::size_t>(h.n());
    return extract(standard_projection(h, ProjValue::Zero), field, {n * q1, 3 * n * q1}, caps,
                   "perfect 3D matchings");
}

} // namespace homforge
