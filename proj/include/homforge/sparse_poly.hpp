#pragma once

#include "homforge/field.hpp"
#include "homforge/var_label.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace homforge {

using BigInt = boost::multiprecision::cpp_int;

/// Exponent vector: (label, exponent) pairs sorted by label, exponents > 0.
using Monomial = std::vector<std::pair<VarLabel, std::uint32_t>>;

Monomial monomial_product(const Monomial& a, const Monomial& b);
Monomial monomial_of(const VarLabel& v, std::uint32_t exponent = 1);
std::uint64_t total_degree(const Monomial& m);
std::uint32_t exponent_of(const Monomial& m, const VarLabel& v);
std::string to_string(const Monomial& m);

inline bool coeff_is_zero(const BigInt& c) { return c.is_zero(); }
inline bool coeff_is_zero(const FieldElem& c) { return c.is_zero(); }
inline std::string coeff_to_string(const BigInt& c) { return c.str(); }
inline std::string coeff_to_string(const FieldElem& c) { return c.to_string(); }

/// Expanded multivariate polynomial with coefficients in the integers or a
/// finite field. Zero coefficients are never stored.
template <class Coeff>
class SparsePoly {
public:
    using Terms = std::map<Monomial, Coeff>;

    SparsePoly() = default;

    static SparsePoly constant(const Coeff& c) { return term({}, c); }
    static SparsePoly term(Monomial m, const Coeff& c) {
        SparsePoly r;
        r.add_term(std::move(m), c);
        return r;
    }

    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(Monomial m, const Coeff& c) {
        if (coeff_is_zero(c))
            return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), c);
            return;
        }
        it->second = it->second + c;
        if (coeff_is_zero(it->second))
            terms_.erase(it);
    }

    SparsePoly& operator+=(const SparsePoly& b) {
        for (const auto& [m, c] : b.terms_)
            add_term(m, c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        SparsePoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term(monomial_product(ma, mb), ca * cb);
        return r;
    }

    SparsePoly scaled(const Coeff& s) const {
        SparsePoly r;
        for (const auto& [m, c] : terms_)
            r.add_term(m, c * s);
        return r;
    }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms_ == b.terms_; }

    std::string to_string() const {
        if (terms_.empty())
            return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first)
                out << " + ";
            first = false;
            std::string cs = coeff_to_string(c);
            if (m.empty())
                out << cs;
            else if (cs == "1")
                out << homforge::to_string(m);
            else
                out << cs << '*' << homforge::to_string(m);
        }
        return out.str();
    }

private:
    Terms terms_;
};

using IntPoly = SparsePoly<BigInt>;
using FieldPoly = SparsePoly<FieldElem>;

/// Reduces integer coefficients into `field` (through the prime subfield).
FieldPoly reduce_mod(const IntPoly& poly, const Field& field);

} // namespace homforge
