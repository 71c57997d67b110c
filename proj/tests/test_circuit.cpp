#include "support.hpp"

#include "homforge/circuit.hpp"
#include "homforge/var_label.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace homforge;
using namespace hf_test;

namespace {

VarLabel x(int i) { return VarLabel::x(i); }

FieldElem substitute(const FieldPoly& p, const Field& f, const std::map<VarLabel, FieldElem>& a) {
    FieldElem total = f.zero();
    for (const auto& [m, c] : p.terms()) {
        FieldElem term = c;
        for (const auto& [v, e] : m)
            term *= a.at(v).pow(e);
        total += term;
    }
    return total;
}

// Random DAG over `vars` inputs; gates may share children.
Circuit random_circuit(int gates, int vars, std::mt19937_64& rng, bool formula = false) {
    Circuit c;
    std::vector<GateId> free_ids;
    for (int i = 1; i <= vars; ++i)
        free_ids.push_back(c.add_input(x(i)));
    free_ids.push_back(c.add_const(1));
    while (static_cast<int>(c.size()) < gates) {
        int arity = 1 + static_cast<int>(rng() % 3);
        std::vector<GateId> kids;
        for (int j = 0; j < arity; ++j) {
            if (formula) {
                if (free_ids.empty())
                    break;
                std::size_t pick = rng() % free_ids.size();
                kids.push_back(free_ids[pick]);
                free_ids.erase(free_ids.begin() + static_cast<long>(pick));
            } else {
                kids.push_back(static_cast<GateId>(rng() % c.size()));
            }
        }
        if (kids.empty())
            break;
        GateId g = rng() % 2 ? c.add_add(kids) : c.add_mul(kids);
        if (formula)
            free_ids.push_back(g);
        if (formula && free_ids.size() == 1)
            break;
    }
    if (formula && free_ids.size() > 1)
        c.set_output(c.add_add(free_ids));
    else
        c.set_output(static_cast<GateId>(c.size() - 1));
    return c;
}

} // namespace

TEST_SUITE("arith-circuit") {

TEST_CASE("evaluation examples") {
    const Field& f7 = Field::get(7);
    Circuit c;
    auto gx = c.add_input(x(1)), gy = c.add_input(x(2));
    c.set_output(c.add_mul({gx, gy}));
    std::map<VarLabel, FieldElem> a{{x(1), f7.from_int(2)}, {x(2), f7.from_int(3)}};
    CHECK(evaluate(c, FieldRing(f7), a) == f7.from_int(6));

    Circuit d;
    auto dx = d.add_input(x(1));
    d.set_output(d.add_add({dx, d.add_const(0)}));
    for (int v = 0; v < 7; ++v)
        CHECK(evaluate(d, FieldRing(f7), {{x(1), f7.from_int(v)}}) == f7.from_int(v));

    CHECK_THROWS_AS(evaluate(c, FieldRing(f7), std::map<VarLabel, FieldElem>{{x(1), f7.one()}}), Error);
}

TEST_CASE("truncated evaluation of (1 + zt)^2") {
    const Field& f5 = Field::get(5);
    TruncRing r(f5, {1, 1});
    Circuit c;
    auto z = c.add_input(VarLabel::scalar('z')), t = c.add_input(VarLabel::scalar('t'));
    auto s = c.add_add({c.add_const(1), c.add_mul({z, t})});
    c.set_output(c.add_mul({s, s}));
    std::map<VarLabel, TruncPoly> a{{VarLabel::scalar('z'), r.z()}, {VarLabel::scalar('t'), r.t()}};
    TruncPoly v = evaluate(c, r, a);
    CHECK(v.coefficient(0, 0) == f5.one());
    CHECK(v.coefficient(1, 1) == f5.from_int(2));
    CHECK(v.coefficient(1, 0).is_zero());
}

TEST_CASE("symbolic evaluation") {
    Circuit c;
    auto gx = c.add_input(x(1)), gy = c.add_input(x(2)), gz = c.add_input(x(3));
    c.set_output(c.add_mul({gx, c.add_add({gy, gz})}));
    IntPoly p = eval_symbolic(c);
    IntPoly expect = IntPoly::term(monomial_product(monomial_of(x(1)), monomial_of(x(2))), 1) +
                     IntPoly::term(monomial_product(monomial_of(x(1)), monomial_of(x(3))), 1);
    CHECK(p == expect);

    Circuit zero;
    zero.set_output(zero.add_const(0));
    CHECK(eval_symbolic(zero).is_zero());

    Circuit sq;
    auto s = sq.add_add({sq.add_input(x(1)), sq.add_input(x(2))});
    sq.set_output(sq.add_mul({s, s}));
    FieldPoly p2 = eval_symbolic(sq, Field::get(2));
    CHECK(p2.size() == 2);
    CHECK(p2.terms().count(monomial_of(x(1), 2)) == 1);
    CHECK(p2.terms().count(monomial_of(x(2), 2)) == 1);
    CHECK(eval_symbolic(sq).size() == 3);
}

TEST_CASE("symbolic budget") {
    // (x1 + ... + x6)^8 has C(13,5) = 1287 monomials.
    Circuit c;
    std::vector<GateId> xs;
    for (int i = 1; i <= 6; ++i)
        xs.push_back(c.add_input(x(i)));
    auto s = c.add_add(xs);
    c.set_output(c.add_mul(std::vector<GateId>(8, s)));
    CHECK(eval_symbolic(c).size() == 1287);
    CHECK_THROWS_AS(eval_symbolic(c, 1000), BudgetExceeded);
}

TEST_CASE("skew and multiplicative disjointness") {
    Circuit a;
    auto ax = a.add_input(x(1)), ay = a.add_input(x(2)), az = a.add_input(x(3));
    a.set_output(a.add_mul({ax, a.add_add({ay, az})}));
    CHECK(check_skew(a));
    CHECK(check_mult_disjoint(a));

    Circuit b;
    auto bx = b.add_input(x(1)), by = b.add_input(x(2)), bz = b.add_input(x(3));
    b.set_output(b.add_mul({b.add_add({bx, by}), b.add_add({by, bz})}));
    CHECK_FALSE(check_skew(b));
    CHECK_FALSE(check_mult_disjoint(b)); // y sits under both factors

    Circuit adds;
    adds.set_output(adds.add_add({adds.add_input(x(1)), adds.add_input(x(2))}));
    CHECK(check_skew(adds));

    Circuit shared;
    auto g = shared.add_add({shared.add_input(x(1)), shared.add_input(x(2))});
    shared.set_output(shared.add_mul({g, g}));
    CHECK_FALSE(check_mult_disjoint(shared));

    Circuit shared_add;
    auto h = shared_add.add_mul({shared_add.add_input(x(1)), shared_add.add_input(x(2))});
    shared_add.set_output(shared_add.add_add({h, h}));
    CHECK(check_mult_disjoint(shared_add));
}

TEST_CASE("parse trees") {
    Circuit m;
    m.set_output(m.add_mul({m.add_input(x(1)), m.add_input(x(2))}));
    auto t1 = enumerate_parse_trees(m, 100);
    REQUIRE(t1.size() == 1);
    CHECK(t1[0].monomial == monomial_product(monomial_of(x(1)), monomial_of(x(2))));

    Circuit s;
    s.set_output(s.add_add({s.add_input(x(1)), s.add_input(x(2))}));
    CHECK(enumerate_parse_trees(s, 100).size() == 2);

    Circuit p;
    auto l = p.add_add({p.add_input(x(1)), p.add_input(x(2))});
    auto r = p.add_add({p.add_input(x(3)), p.add_input(x(4))});
    p.set_output(p.add_mul({l, r}));
    auto t4 = enumerate_parse_trees(p, 100);
    CHECK(t4.size() == 4);
    CHECK(count_parse_trees(p) == 4);
    std::set<Monomial> mons;
    for (const auto& t : t4)
        mons.insert(t.monomial);
    for (int a : {1, 2})
        for (int b : {3, 4})
            CHECK(mons.count(monomial_product(monomial_of(x(a)), monomial_of(x(b)))) == 1);
    CHECK_THROWS_AS(enumerate_parse_trees(p, 3), BudgetExceeded);

    Circuit bad;
    auto g = bad.add_add({bad.add_input(x(1)), bad.add_input(x(2))});
    bad.set_output(bad.add_mul({g, g}));
    CHECK_THROWS_AS(enumerate_parse_trees(bad, 100), PreconditionError);
}

TEST_CASE("parse-tree monomials sum to the symbolic polynomial") {
    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Circuit c = random_circuit(6 + static_cast<int>(rng() % 14), 4, rng, trial % 2 == 0);
        if (!check_mult_disjoint(c) || count_parse_trees(c) > 10'000)
            continue;
        IntPoly sum;
        for (const auto& t : enumerate_parse_trees(c, 10'000))
            sum.add_term(t.monomial, t.coefficient);
        CHECK(sum == eval_symbolic(c));
        ++checked;
    }
    CHECK(checked >= 50);
}

TEST_CASE("numeric evaluation commutes with symbolic expansion") {
    std::mt19937_64 rng(5);
    for (const Field* fp : small_fields()) {
        for (int trial = 0; trial < 25; ++trial) {
            Circuit c = random_circuit(10 + static_cast<int>(rng() % 30), 4, rng);
            FieldPoly p;
            try {
                p = eval_symbolic(c, *fp, 20'000);
            } catch (const BudgetExceeded&) {
                continue;
            }
            std::map<VarLabel, FieldElem> a;
            for (int i = 1; i <= 4; ++i)
                a[x(i)] = random_elem(*fp, rng);
            CHECK(evaluate(c, FieldRing(*fp), a) == substitute(p, *fp, a));
        }
    }
}

TEST_CASE("check_skew ignores the order of add children") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Circuit c = random_circuit(20, 3, rng);
        Circuit d;
        for (const Gate& g : c.gates()) {
            switch (g.kind) {
            case GateKind::Const:
                d.add_const(g.value);
                break;
            case GateKind::Input:
                d.add_input(c.labels()[g.label]);
                break;
            case GateKind::Add: {
                auto kids = g.children;
                std::shuffle(kids.begin(), kids.end(), rng);
                d.add_add(kids);
                break;
            }
            case GateKind::Mul:
                d.add_mul(g.children);
                break;
            }
        }
        d.set_output(c.output());
        CHECK(check_skew(c) == check_skew(d));
    }
}

TEST_CASE("text format round trip and validation") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Circuit c = random_circuit(25, 4, rng);
        std::stringstream s;
        write_circuit(s, c);
        CHECK(read_circuit(s) == c);
    }
    std::istringstream forward("gate 0 input X:1\ngate 1 add 2\ngate 2 input X:2\noutput 1\n");
    CHECK_THROWS_AS(read_circuit(forward), ParseError);
    std::istringstream no_output("gate 0 input X:1\n");
    CHECK_THROWS_AS(read_circuit(no_output), Error);
    std::istringstream comments("# header\ngate 0 input Ye:2:1\n\noutput 0\n");
    Circuit c = read_circuit(comments);
    CHECK(c.label_of(0) == VarLabel::edge_y(1, 2));
}

TEST_CASE("variable labels") {
    CHECK(VarLabel::edge_y(3, 1) == VarLabel::edge_y(1, 3));
    CHECK(VarLabel::edge_y(3, 1).to_string() == "Ye:1:3");
    for (const char* text : {"Z:2:5", "Ye:1:4", "Yv:3", "Yc:1:-2:3", "X:4", "X:1:2", "X:1:2:3", "z", "t", "y", "foo"})
        CHECK(VarLabel::parse(text).to_string() == text);
    CHECK(VarLabel::parse("X:2:1") == VarLabel::x_edge(1, 2));
    CHECK_THROWS_AS(VarLabel::edge_y(2, 2), Error);
    CHECK_THROWS_AS(VarLabel::parse("Ye:1"), Error);
}

} // TEST_SUITE
