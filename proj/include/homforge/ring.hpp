#pragma once

#include "homforge/error.hpp"
#include "homforge/field.hpp"
#include "homforge/sparse_poly.hpp"
#include "homforge/trunc_poly.hpp"

#include <concepts>
#include <cstdint>

namespace homforge {

/// A ring context carries whatever is needed to build values (the field, the
/// truncation caps) and performs the arithmetic. Generic algorithms (circuit
/// evaluation, definitional sums) are written against this concept.
template <class R>
concept RingContext = requires(const R& r, const typename R::value_type& a, std::int64_t n) {
    typename R::value_type;
    { r.from_int(n) } -> std::convertible_to<typename R::value_type>;
    { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
    { r.is_zero(a) } -> std::convertible_to<bool>;
    { r.is_one(a) } -> std::convertible_to<bool>;
};

struct FieldRing {
    using value_type = FieldElem;
    const Field* field;

    explicit FieldRing(const Field& f) : field(&f) {}
    FieldElem from_int(std::int64_t n) const { return field->from_int(n); }
    FieldElem add(const FieldElem& a, const FieldElem& b) const { return a + b; }
    FieldElem mul(const FieldElem& a, const FieldElem& b) const { return a * b; }
    bool is_zero(const FieldElem& a) const { return a.is_zero(); }
    bool is_one(const FieldElem& a) const { return a.is_one(); }
};

struct TruncRing {
    using value_type = TruncPoly;
    const Field* field;
    TruncCaps caps;

    TruncRing(const Field& f, TruncCaps c) : field(&f), caps(c) {}
    TruncPoly from_int(std::int64_t n) const { return TruncPoly::constant(*field, caps, field->from_int(n)); }
    TruncPoly add(const TruncPoly& a, const TruncPoly& b) const { return a + b; }
    TruncPoly mul(const TruncPoly& a, const TruncPoly& b) const { return a * b; }
    bool is_zero(const TruncPoly& a) const { return a.is_zero(); }
    bool is_one(const TruncPoly& a) const { return a.is_one(); }
    TruncPoly z() const { return TruncPoly::monomial(*field, caps, 1, 0, field->one()); }
    TruncPoly t() const { return TruncPoly::monomial(*field, caps, 0, 1, field->one()); }
};

struct IntegerRing {
    using value_type = BigInt;
    BigInt from_int(std::int64_t n) const { return BigInt(n); }
    BigInt add(const BigInt& a, const BigInt& b) const { return a + b; }
    BigInt mul(const BigInt& a, const BigInt& b) const { return a * b; }
    bool is_zero(const BigInt& a) const { return a.is_zero(); }
    bool is_one(const BigInt& a) const { return a == 1; }
};

/// Polynomials over a coefficient ring. Every product is checked against
/// `term_bound`; exceeding it throws BudgetExceeded.
template <class CoeffRing>
struct PolyRing {
    using coeff_type = typename CoeffRing::value_type;
    using value_type = SparsePoly<coeff_type>;
    CoeffRing coeffs;
    std::size_t term_bound = 1'000'000;

    explicit PolyRing(CoeffRing c, std::size_t bound = 1'000'000) : coeffs(std::move(c)), term_bound(bound) {}

    value_type from_int(std::int64_t n) const { return value_type::constant(coeffs.from_int(n)); }
    value_type variable(const VarLabel& v) const { return value_type::term(monomial_of(v), coeffs.from_int(1)); }
    value_type add(const value_type& a, const value_type& b) const { return check(a + b); }
    value_type mul(const value_type& a, const value_type& b) const {
        if (a.size() * b.size() > term_bound * 4)
            throw BudgetExceeded("symbolic product would exceed the monomial bound; use numeric evaluation",
                                 a.size() * b.size());
        return check(a * b);
    }
    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool is_one(const value_type& a) const {
        return a.size() == 1 && a.terms().begin()->first.empty() && coeffs.is_one(a.terms().begin()->second);
    }

private:
    value_type check(value_type v) const {
        if (v.size() > term_bound)
            throw BudgetExceeded("symbolic evaluation exceeded " + std::to_string(term_bound) +
                                     " monomials; use numeric evaluation instead",
                                 v.size());
        return v;
    }
};

using IntPolyRing = PolyRing<IntegerRing>;
using FieldPolyRing = PolyRing<FieldRing>;

/// Square-and-multiply in any ring context.
template <RingContext R>
typename R::value_type ring_pow(const R& ring, typename R::value_type base, std::uint64_t e) {
    auto result = ring.from_int(1);
    while (e) {
        if (e & 1)
            result = ring.mul(result, base);
        e >>= 1;
        if (e)
            base = ring.mul(base, base);
    }
    return result;
}

/// acc *= factor, skipping the work when factor is the identity or acc is
/// already zero.
template <RingContext R>
void ring_mul_into(const R& ring, typename R::value_type& acc, const typename R::value_type& factor) {
    if (ring.is_one(factor) || ring.is_zero(acc))
        return;
    acc = ring.mul(acc, factor);
}

} // namespace homforge
