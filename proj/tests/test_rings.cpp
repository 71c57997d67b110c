#include "support.hpp"

#include "homforge/ring.hpp"
#include "homforge/sparse_poly.hpp"
#include "homforge/trunc_poly.hpp"

#include <doctest.h>

using namespace homforge;
using namespace hf_test;

TEST_SUITE("rings") {

TEST_CASE("prime field arithmetic") {
    const Field& f5 = Field::get(5);
    CHECK(f5.from_int(3) * f5.from_int(4) == f5.from_int(2));
    CHECK(f5.from_int(-1) == f5.from_int(4));
    CHECK(f5.from_int(2).inv() == f5.from_int(3));
    const Field& f7 = Field::get(7);
    CHECK(f7.from_int(3).pow(6) == f7.one());
    CHECK(f7.from_int(3).pow(0) == f7.one());
}

TEST_CASE("F_4 reduces by x^2 + x + 1") {
    const Field& f4 = Field::get(2, 2);
    CHECK(f4.modulus() == std::vector<std::uint64_t>{1, 1, 1});
    const FieldElem x = f4.element(2);
    CHECK(x * x == f4.element(3));
    CHECK(x * x * x == f4.one());
    CHECK(f4.q() == 4);
}

TEST_CASE("field errors") {
    const Field& f5 = Field::get(5);
    CHECK_THROWS_AS(f5.zero().inv(), Error);
    CHECK_THROWS_AS(f5.one() + Field::get(7).one(), DomainMismatch);
    CHECK_THROWS_AS(Field::get(6), Error);
    CHECK_THROWS_AS(Field::get(2, 2, {1, 0, 1}), Error); // x^2 + 1 = (x + 1)^2
    CHECK_THROWS_AS(Field::parse("2^x"), Error);
}

TEST_CASE("parse and user moduli") {
    CHECK(Field::parse("5").q() == 5);
    CHECK(Field::parse("3^2").q() == 9);
    const Field& f = Field::parse("2^3", std::vector<std::uint64_t>{1, 0, 1, 1});
    CHECK(f.q() == 8);
    CHECK(f.modulus() == std::vector<std::uint64_t>{1, 0, 1, 1});
    // Every nonzero element of F_8 generates a subgroup of order dividing 7.
    for (std::uint64_t i = 1; i < 8; ++i)
        CHECK(f.element(i).pow(7) == f.one());
}

TEST_CASE("element coefficients are residues of length k") {
    const Field& f = Field::get(3, 3);
    for (std::uint64_t i = 0; i < f.q(); ++i) {
        auto c = f.element(i).coeffs();
        REQUIRE(c.size() == 3);
        for (auto r : c)
            CHECK(r < 3);
    }
}

TEST_CASE("Fermat exponent law over every table field") {
    for (auto [p, k] : std::vector<std::pair<int, unsigned>>{
             {2, 1}, {3, 1}, {5, 1}, {7, 1}, {2, 2}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}, {7, 2}}) {
        const Field& f = Field::get(p, k);
        for (std::uint64_t i = 0; i < f.q(); ++i) {
            const FieldElem a = f.element(i);
            CHECK(a.pow(f.q() - 1) == (a.is_zero() ? f.zero() : f.one()));
        }
    }
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{5, 1}, {2, 3}, {3, 2}, {7, 2}, {2, 4}}) {
        const Field& f = Field::get(p, k);
        for (int trial = 0; trial < 300; ++trial) {
            auto a = random_elem(f, rng), b = random_elem(f, rng), c = random_elem(f, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == f.zero());
            if (!a.is_zero())
                CHECK(a * a.inv() == f.one());
        }
    }
}

TEST_CASE("truncated products") {
    const Field& f5 = Field::get(5);
    TruncCaps c11{1, 1};
    auto one_zt = TruncPoly::constant(f5, c11, f5.one()) + TruncPoly::monomial(f5, c11, 1, 1, f5.one());
    auto sq = one_zt * one_zt;
    CHECK(sq.coefficient(1, 1) == f5.from_int(2));
    CHECK(sq.coefficient(0, 0) == f5.one());
    CHECK(sq.coefficient(1, 0).is_zero());
    CHECK(one_zt + TruncPoly(f5, c11) == one_zt);
    CHECK(TruncPoly(f5, c11).coefficient(1, 0).is_zero());

    const Field& f3 = Field::get(3);
    TruncCaps c20{2, 0};
    auto one_z = TruncPoly::constant(f3, c20, f3.one()) + TruncPoly::monomial(f3, c20, 1, 0, f3.one());
    auto p = one_z * one_z;
    CHECK(p.coefficient(0, 0) == f3.one());
    CHECK(p.coefficient(1, 0) == f3.from_int(2));
    CHECK(p.coefficient(2, 0) == f3.one());

    CHECK_THROWS_AS(sq.coefficient(2, 0), Error);
    CHECK_THROWS_AS(one_zt * TruncPoly(f5, TruncCaps{1, 2}), DomainMismatch);
    CHECK(TruncPoly::monomial(f5, c11, 2, 0, f5.one()).is_zero());
}

TEST_CASE("truncated product equals expand-then-truncate") {
    std::mt19937_64 rng(11);
    const VarLabel z = VarLabel::scalar('z'), t = VarLabel::scalar('t');
    for (const Field* fp : small_fields()) {
        const Field& f = *fp;
        for (int trial = 0; trial < 25; ++trial) {
            TruncCaps caps{rng() % 7, rng() % 7};
            TruncPoly a(f, caps), b(f, caps);
            FieldPoly pa, pb;
            for (std::size_t i = 0; i <= caps.dz; ++i)
                for (std::size_t j = 0; j <= caps.dt; ++j) {
                    auto ca = random_elem(f, rng), cb = random_elem(f, rng);
                    a.set_coefficient(i, j, ca);
                    b.set_coefficient(i, j, cb);
                    Monomial m = monomial_product(i ? monomial_of(z, i) : Monomial{},
                                                  j ? monomial_of(t, j) : Monomial{});
                    pa.add_term(m, ca);
                    pb.add_term(m, cb);
                }
            TruncPoly prod = a * b;
            FieldPoly full = pa * pb;
            TruncPoly expect(f, caps);
            for (const auto& [m, c] : full.terms()) {
                std::size_t i = exponent_of(m, z), j = exponent_of(m, t);
                if (i <= caps.dz && j <= caps.dt)
                    expect.set_coefficient(i, j, c);
            }
            CHECK(prod == expect);
        }
    }
}

TEST_CASE("ring_pow agrees with repeated multiplication") {
    const Field& f = Field::get(3, 2);
    FieldRing r(f);
    for (std::uint64_t i = 0; i < f.q(); ++i) {
        FieldElem acc = f.one();
        for (int e = 0; e < 12; ++e) {
            CHECK(ring_pow(r, f.element(i), e) == acc);
            acc *= f.element(i);
        }
    }
}

} // TEST_SUITE
