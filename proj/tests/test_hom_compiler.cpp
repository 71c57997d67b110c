#include "support.hpp"

#include "homforge/hom_compiler.hpp"
#include "homforge/homomorphism.hpp"
#include "homforge/tree_decomp.hpp"

#include <doctest.h>

using namespace homforge;
using namespace hf_test;

namespace {

Monomial mono(std::initializer_list<VarLabel> vars) {
    Monomial m;
    for (const auto& v : vars)
        m = monomial_product(m, monomial_of(v));
    return m;
}

Circuit rooted_at(const Circuit& c, GateId g) {
    Circuit copy = c;
    copy.set_output(g);
    return copy;
}

CompiledHom compile_exact(const Graph& g, const Graph& h, const CompileOptions& opts = {}) {
    return compile(g, treewidth_exact(g).decomp, h, opts);
}

} // namespace

TEST_SUITE("hom-compiler") {

TEST_CASE("K2 into K2") {
    Graph k2 = Graph::complete(2);
    CompiledHom c = compile_exact(k2, k2);
    IntPoly p = eval_symbolic(c.circuit);
    IntPoly expect;
    expect.add_term(mono({VarLabel::z(1, 1), VarLabel::z(2, 2), VarLabel::edge_y(1, 2)}), 1);
    expect.add_term(mono({VarLabel::z(1, 2), VarLabel::z(2, 1), VarLabel::edge_y(1, 2)}), 1);
    CHECK(p == expect);
    CHECK(eval_symbolic(specialize_Z(c)) == IntPoly::term(monomial_of(VarLabel::edge_y(1, 2)), 2));
}

TEST_CASE("C3 into K3 with Z = 1") {
    CompiledHom c = compile(Graph::cycle(3), cycle_decomp(3), Graph::complete(3));
    IntPoly p = eval_symbolic(specialize_Z(c));
    CHECK(p == IntPoly::term(mono({VarLabel::edge_y(1, 2), VarLabel::edge_y(1, 3), VarLabel::edge_y(2, 3)}), 6));
}

TEST_CASE("size bound for P3 into K3") {
    CHECK(compile_size_bound(3, 3, 3, 1) == 648);
    CompiledHom c = compile_exact(Graph::path(3), Graph::complete(3));
    CHECK(c.meta.width == 1);
    CHECK(c.meta.size_bound == 648);
    CHECK(c.circuit.size() <= 648);
    CHECK(c.meta.gates == c.circuit.size());
    CHECK(c.meta.wires == c.circuit.num_wires());
}

TEST_CASE("invalid decompositions are rejected with their violations") {
    Graph g = Graph::cycle(4);
    NiceTreeDecomp d = cycle_decomp(3);
    try {
        compile(g, d, Graph::complete(2));
        FAIL("expected InvalidDecomposition");
    } catch (const InvalidDecomposition& e) {
        CHECK_FALSE(e.violations().empty());
    }
}

TEST_CASE("projection") {
    Graph g = Graph::cycle(5);
    Graph h = Graph::complete(3);
    CompiledHom c = compile(g, cycle_decomp(5), h);
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const Field& f = Field::get(p);
        Circuit ones = project(c.circuit, [](const VarLabel&) { return ProjTarget::one(); });
        CHECK(evaluate(ones, FieldRing(f), [](const VarLabel&) { return std::optional<FieldElem>(); }) ==
              f.from_int(30));
    }

    CompiledHom k = compile(Graph::cycle(3), cycle_decomp(3), Graph::complete(4));
    Circuit spec = specialize_Z(k);
    std::map<VarLabel, ProjTarget> kill{{VarLabel::edge_y(1, 2), ProjTarget::zero()}};
    FieldPoly killed = eval_symbolic(project(spec, kill), Field::get(5));
    FieldPoly full = eval_symbolic(spec, Field::get(5));
    CHECK(full.size() == 4); // one triangle per 3-subset of K4
    CHECK(killed.size() == 2);
    for (const auto& [m, coef] : killed.terms())
        CHECK(exponent_of(m, VarLabel::edge_y(1, 2)) == 0);
    CHECK(eval_symbolic(project(spec, std::map<VarLabel, ProjTarget>{})) == eval_symbolic(spec));

    std::map<VarLabel, ProjTarget> rename{{VarLabel::edge_y(1, 2), ProjTarget::to(VarLabel::scalar('y'))}};
    FieldPoly renamed = eval_symbolic(project(spec, rename), Field::get(5));
    CHECK(renamed.size() == 4);
}

TEST_CASE("compiled circuits match brute-force sums") {
    std::mt19937_64 rng(47);
    int compiled = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(1 + static_cast<int>(rng() % 6), 0.5, rng);
        Graph h = random_graph(1 + static_cast<int>(rng() % 4), 0.7, rng);
        auto exact = treewidth_exact(g);
        CompiledHom c = compile(g, exact.decomp, h);
        ++compiled;
        CHECK(c.circuit.size() <= c.meta.size_bound);
        CHECK(is_constant_free(c.circuit));
        CHECK(c.meta.skew == check_skew(c.circuit));
        if (!has_join(exact.decomp))
            CHECK(c.meta.skew);
        auto homs = brute_homs(g, h);
        for (const Field* fp : small_fields()) {
            for (int a = 0; a < 3; ++a) {
                std::map<VarLabel, FieldElem> values;
                auto value = [&](const VarLabel& v) {
                    auto it = values.find(v);
                    if (it == values.end())
                        it = values.emplace(v, random_elem(*fp, rng)).first;
                    return it->second;
                };
                FieldElem got = evaluate(c.circuit, FieldRing(*fp),
                                         [&](const VarLabel& v) { return std::optional<FieldElem>(value(v)); });
                CHECK(got == brute_hom_sum(g, homs, *fp, value));
            }
        }
    }
    CHECK(compiled == 30);
}

TEST_CASE("join-free decompositions give skew circuits") {
    for (int n : {3, 4, 5, 6, 7}) {
        CompiledHom c = compile(Graph::cycle(n), cycle_decomp(n), Graph::complete(3));
        CHECK(check_skew(c.circuit));
        CHECK(c.meta.skew);
    }
    // A star decomposed with a Join still computes the same polynomial as a
    // Join-free decomposition of the same graph.
    Graph star(4);
    for (int leaf = 2; leaf <= 4; ++leaf)
        star.add_edge(1, leaf);
    TreeDecomp branching{{{1, 2}, {1, 3}, {1, 4}}, {{0, 1}, {0, 2}}};
    NiceTreeDecomp with_join = make_nice(branching, star);
    TreeDecomp chain{{{1, 2}, {1, 3}, {1, 4}}, {{0, 1}, {1, 2}}};
    NiceTreeDecomp without = make_nice(chain, star);
    REQUIRE(has_join(with_join));
    REQUIRE_FALSE(has_join(without));
    Graph h = Graph::complete(3);
    CompiledHom a = compile(star, with_join, h), b = compile(star, without, h);
    CHECK_FALSE(check_skew(a.circuit));
    CHECK(check_skew(b.circuit));
    CHECK(eval_symbolic(a.circuit) == eval_symbolic(b.circuit));
}

TEST_CASE("derivative gates divide out the bag's own factors") {
    std::mt19937_64 rng(53);
    CompileOptions opts;
    opts.keep_tables = true;
    int checked = 0;
    for (int trial = 0; trial < 8; ++trial) {
        Graph g = random_graph(2 + static_cast<int>(rng() % 4), 0.6, rng);
        Graph h = random_graph(2 + static_cast<int>(rng() % 2), 0.8, rng);
        auto d = treewidth_exact(g).decomp;
        CompiledHom c = compile(g, d, h, opts);
        REQUIRE(c.tables.size() == d.nodes.size());
        for (const NodeGates& t : c.tables) {
            if (t.bag.size() > 4)
                continue;
            const std::size_t k = t.bag.size();
            for (std::size_t code = 0; code < t.main.size(); ++code) {
                std::vector<Vertex> phi(k);
                std::size_t rest = code;
                for (std::size_t i = 0; i < k; ++i) {
                    phi[i] = static_cast<Vertex>(rest % h.n()) + 1;
                    rest /= h.n();
                }
                IntPoly main = eval_symbolic(rooted_at(c.circuit, t.main[code]));
                if (main.is_zero())
                    continue;
                IntPoly factor = IntPoly::constant(1);
                for (std::size_t i = 0; i < k; ++i)
                    factor = factor * IntPoly::term(monomial_of(VarLabel::z(t.bag[i], phi[i])), 1);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = i + 1; j < k; ++j)
                        if (g.has_edge(t.bag[i], t.bag[j]))
                            factor = factor * IntPoly::term(monomial_of(VarLabel::edge_y(phi[i], phi[j])), 1);
                IntPoly prime = eval_symbolic(rooted_at(c.circuit, t.prime[code]));
                CHECK(main == prime * factor);
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

} // TEST_SUITE
