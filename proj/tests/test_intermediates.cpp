#include "support.hpp"

#include "homforge/counting_oracles.hpp"
#include "homforge/intermediates.hpp"

#include <doctest.h>

using namespace homforge;
using namespace hf_test;

namespace {

const std::vector<Family> kFamilies{Family::Sat, Family::VC, Family::CIS, Family::Clow, Family::TDM};

Valuation<FieldElem> constant(const Field& f, std::int64_t v) {
    return [&f, v](const VarLabel&) { return f.from_int(v); };
}

// Random values over the family registry; unknown labels are an error.
Valuation<FieldElem> random_valuation(Family fam, int n, const Field& f, std::mt19937_64& rng) {
    auto table = std::make_shared<std::map<VarLabel, FieldElem>>();
    for (const auto& v : family_variables(fam, n))
        (*table)[v] = random_elem(f, rng);
    return [table](const VarLabel& v) { return table->at(v); };
}

std::vector<std::vector<FieldElem>> random_weights(const Graph& g, const Field& f, std::mt19937_64& rng) {
    const int n = g.n();
    std::vector<std::vector<FieldElem>> w(n, std::vector<FieldElem>(n, f.zero()));
    for (const auto& [u, v] : g.edges())
        w[u - 1][v - 1] = w[v - 1][u - 1] = random_elem(f, rng);
    return w;
}

} // namespace

TEST_SUITE("intermediates") {

TEST_CASE("registries") {
    for (int n = 1; n <= 3; ++n)
        CHECK(family_variables(Family::Sat, n).size() == static_cast<std::size_t>(n + 8 * n * n * n));
    CHECK(family_variables(Family::VC, 4).size() == 6 + 4);
    CHECK(family_variables(Family::TDM, 2).size() == 8 + 6);
    CHECK(parse_family("3dm") == Family::TDM);
    CHECK(parse_family("clow") == Family::Clow);
    CHECK_THROWS_AS(parse_family("cut"), Error);
}

TEST_CASE("definitional examples") {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const Field& f = Field::get(p);
        FieldRing r(f);
        CHECK(eval_definitional(Family::VC, 4, f.q(), r, constant(f, 1)) == f.from_int(16));
        CHECK(eval_definitional(Family::Sat, 3, f.q(), r, constant(f, 1)) == f.from_int(8));
        CHECK(eval_definitional(Family::TDM, 1, f.q(), r, constant(f, 1)) == f.from_int(2));
    }
    const Field& f = Field::get(3);
    CHECK_THROWS_AS(eval_definitional(Family::CIS, 13, 3, FieldRing(f), constant(f, 1)), BudgetExceeded);
    CHECK_THROWS_AS(eval_definitional(Family::VC, 0, 3, FieldRing(f), constant(f, 1)), PreconditionError);
}

TEST_CASE("fast evaluation examples") {
    const Field& f = Field::get(5);
    const VarLabel x1 = VarLabel::x(1), c = VarLabel::clause_y(-1, -1, -1);
    auto conflict = [&](const VarLabel& v) { return v == x1 || v == c ? f.zero() : f.one(); };
    CHECK(eval_fast(Family::Sat, 2, f, conflict).is_zero());
    CHECK(eval_definitional(Family::Sat, 2, f.q(), FieldRing(f), conflict).is_zero());

    for (int n = 2; n <= 6; ++n) {
        auto y1 = [&](const VarLabel& v) { return v == VarLabel::vertex_y(1) ? f.zero() : f.one(); };
        CHECK(eval_fast(Family::VC, n, f, y1) == f.from_int(1 << (n - 1)));
    }
    for (std::uint64_t p : {2, 3, 5}) {
        const Field& g = Field::get(p);
        CHECK(eval_fast(Family::Clow, 3, g, constant(g, 1)) == g.from_int(2));
        CHECK(eval_definitional(Family::Clow, 3, g.q(), FieldRing(g), constant(g, 1)) == g.from_int(2));
    }
}

TEST_CASE("fast equals definitional on random assignments") {
    std::mt19937_64 rng(59);
    const std::map<Family, int> max_n{
        {Family::Sat, 5}, {Family::VC, 7}, {Family::CIS, 5}, {Family::Clow, 6}, {Family::TDM, 2}};
    for (const Field* fp : small_fields())
        for (Family fam : kFamilies)
            for (int trial = 0; trial < 10; ++trial) {
                const int n = 1 + static_cast<int>(rng() % max_n.at(fam));
                auto val = random_valuation(fam, n, *fp, rng);
                CHECK(eval_fast(fam, n, *fp, val) == eval_definitional(fam, n, fp->q(), FieldRing(*fp), val));
            }
}

TEST_CASE("zero-one assignments exercise every fast-path branch") {
    std::mt19937_64 rng(61);
    const Field& f = Field::get(3);
    for (Family fam : kFamilies)
        for (int trial = 0; trial < 30; ++trial) {
            const int n = 1 + static_cast<int>(rng() % (fam == Family::TDM ? 2 : 4));
            auto table = std::make_shared<std::map<VarLabel, FieldElem>>();
            std::bernoulli_distribution zero(0.3);
            for (const auto& v : family_variables(fam, n))
                (*table)[v] = zero(rng) ? f.zero() : f.one();
            Valuation<FieldElem> val = [table](const VarLabel& v) { return table->at(v); };
            CHECK(eval_fast(fam, n, f, val) == eval_definitional(fam, n, f.q(), FieldRing(f), val));
        }
}

TEST_CASE("grouped clique sum on seven and eight vertices") {
    std::mt19937_64 rng(83);
    for (const Field* fp : small_fields())
        for (int n : {7, 8}) {
            auto val = random_valuation(Family::CIS, n, *fp, rng);
            CHECK(eval_fast(Family::CIS, n, *fp, val) ==
                  eval_definitional(Family::CIS, n, fp->q(), FieldRing(*fp), val));
        }
    for (std::uint64_t p : {2, 3, 5})
        for (int trial = 0; trial < 4; ++trial) {
            Graph g = random_graph(7 + trial % 2, 0.6, rng);
            for (int k : {2, 3, 4})
                CHECK(count_via_coefficient(Family::CIS, g, k, Field::get(p)).value ==
                      count_clique(g, k, Field::get(p)).modp);
        }
}

TEST_CASE("clow matrix formula equals naive enumeration") {
    std::mt19937_64 rng(67);
    for (const Field* fp : small_fields())
        for (int trial = 0; trial < 12; ++trial) {
            Graph g = random_graph(1 + static_cast<int>(rng() % 7), 0.6, rng);
            auto w = random_weights(g, *fp, rng);
            CHECK(clow_matrix_sum(*fp, w) == clow_sum_naive(*fp, w));
        }
}

TEST_CASE("definitional exponents are multiples of q - 1") {
    IntPolyRing ring{IntegerRing{}};
    Valuation<IntPoly> var = [&](const VarLabel& v) { return ring.variable(v); };
    for (std::uint64_t q : {3, 4}) {
        for (auto [fam, n] : std::vector<std::pair<Family, int>>{
                 {Family::Sat, 1}, {Family::VC, 3}, {Family::CIS, 3}, {Family::Clow, 3}, {Family::TDM, 1}}) {
            IntPoly p = eval_definitional(fam, n, q, ring, var);
            CHECK_FALSE(p.is_zero());
            for (const auto& [m, c] : p.terms())
                for (const auto& [v, e] : m)
                    CHECK(e % (q - 1) == 0);
        }
    }
}

TEST_CASE("standard projections") {
    Graph k4 = Graph::complete(4);
    ProjectionSpec vc = standard_projection(Family::VC, k4);
    for (const auto& v : family_variables(Family::VC, 4))
        CHECK(vc(v) == (v.kind() == VarKind::VertexY ? ProjValue::T : ProjValue::Z));

    Cnf one;
    one.n = 2;
    one.clauses.push_back({1, -2, 2});
    ProjectionSpec sat = standard_projection(one);
    int ts = 0;
    for (const auto& v : family_variables(Family::Sat, 2))
        if (sat(v) == ProjValue::T)
            ++ts;
        else
            CHECK(sat(v) == ProjValue::One);
    CHECK(ts == 1);

    Graph missing = complement(Graph(4));
    Graph drop(4);
    for (const auto& [u, v] : missing.edges())
        if (!(u == 1 && v == 2))
            drop.add_edge(u, v);
    ProjectionSpec clow = standard_projection(Family::Clow, drop);
    CHECK(clow(VarLabel::x_edge(1, 2)) == ProjValue::One);
    CHECK(clow(VarLabel::x_edge(3, 4)) == ProjValue::Z);

    CHECK_THROWS_AS(standard_projection(Family::Sat, k4), PreconditionError);
}

TEST_CASE("coefficient examples") {
    Graph k4 = Graph::complete(4);
    CHECK(count_via_coefficient(Family::VC, k4, 3, Field::get(3)).value == Field::get(3).one());
    CHECK(count_via_coefficient(Family::VC, k4, 2, Field::get(3)).value.is_zero());
    // K_4 has 3 Hamiltonian cycles; each is met from its head in both
    // directions, so the coefficient is 6.
    CHECK(count_via_coefficient(Family::Clow, k4, 0, Field::get(2)).value.is_zero());
    CHECK(count_via_coefficient(Family::Clow, k4, 0, Field::get(5)).value == Field::get(5).one());
    CHECK(count_via_coefficient(Family::Clow, k4, 0, Field::get(7)).value == Field::get(7).from_int(6));
    CHECK(count_via_coefficient(Family::CIS, k4, 3, Field::get(5)).value == Field::get(5).from_int(4));
    CHECK_THROWS_AS(count_via_coefficient(Family::CIS, k4, 1, Field::get(5)), PreconditionError);

    Hypergraph3 perfect(2);
    perfect.add_edge(1, 1, 1);
    perfect.add_edge(2, 2, 2);
    CHECK(count_via_coefficient(perfect, Field::get(3)).value == Field::get(3).one());

    auto q = count_via_coefficient(Family::VC, k4, 3, Field::get(3), TruncCaps{20, 8});
    CHECK(q.value == Field::get(3).one());
    CHECK_THROWS_AS(count_via_coefficient(Family::VC, k4, 3, Field::get(3), TruncCaps{1, 1}), PreconditionError);
}

TEST_CASE("complete-graph clow coefficients are twice the Hamiltonian cycle count") {
    const Field& f = Field::get(5);
    for (int n = 3; n <= 6; ++n) {
        auto q = count_via_coefficient(Family::Clow, Graph::complete(n), 0, f);
        CHECK(q.value == make_count(2 * count_hc(Graph::complete(n), f).exact, f).modp);
    }
}

TEST_CASE("coefficients agree with the oracles") {
    std::mt19937_64 rng(71);
    for (std::uint64_t p : {2, 3, 5}) {
        const Field& f = Field::get(p);
        for (int trial = 0; trial < 8; ++trial) {
            Cnf phi = random_cnf(1 + static_cast<int>(rng() % 5), static_cast<int>(rng() % 5), rng);
            CHECK(count_via_coefficient(phi, f).value == count_sat3(phi, f).modp);

            Graph g = random_graph(1 + static_cast<int>(rng() % 6), 0.5, rng);
            int k = static_cast<int>(rng() % (g.n() + 1));
            CHECK(count_via_coefficient(Family::VC, g, k, f).value == count_vc(g, k, f).modp);
            int kc = 2 + static_cast<int>(rng() % 3);
            if (g.n() <= 5 && kc <= g.n())
                CHECK(count_via_coefficient(Family::CIS, g, kc, f).value == count_clique(g, kc, f).modp);
            Graph c = random_graph(3 + static_cast<int>(rng() % 4), 0.6, rng);
            CHECK(count_via_coefficient(Family::Clow, c, 0, f).value ==
                  make_count(2 * count_hc(c, f).exact, f).modp);

            Hypergraph3 h = random_hypergraph(1 + static_cast<int>(rng() % 2), 0.5, rng);
            CHECK(count_via_coefficient(h, f).value == count_3dm(h, f).modp);
        }
    }
}

} // TEST_SUITE
