#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace homforge {

class FieldElem;

/// Finite field F_q, q = p^k, in polynomial basis over F_p.
///
/// Fields are interned: `Field::get` returns a reference that stays valid for
/// the lifetime of the process, so elements can carry a plain pointer to their
/// field. Elements are packed into one integer, sum of c_i * p^i.
class Field {
public:
    using Raw = std::uint64_t;

    /// Prime field F_p, or F_{p^k} with a modulus from the built-in table
    /// (q in {4, 8, 9, 16, 25, 27, 49}).
    static const Field& get(std::uint64_t p, unsigned k = 1);

    /// F_{p^k} with a caller-supplied modulus c_0..c_k (monic, irreducible).
    static const Field& get(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus);

    /// Parses "5" or "2^2"; `modulus` overrides the built-in table.
    static const Field& parse(std::string_view spec,
                              std::optional<std::vector<std::uint64_t>> modulus = std::nullopt);

    std::uint64_t p() const noexcept { return p_; }
    unsigned k() const noexcept { return k_; }
    std::uint64_t q() const noexcept { return q_; }
    /// Coefficients c_0..c_k of the defining polynomial; empty for prime fields.
    const std::vector<std::uint64_t>& modulus() const noexcept { return modulus_; }
    std::string name() const;

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_int(std::int64_t n) const;
    FieldElem from_coeffs(std::span<const std::uint64_t> coeffs) const;
    /// The element with packed index `i` in [0, q); enumerates the field.
    FieldElem element(std::uint64_t i) const;

    // Packed-representation arithmetic, used by the element and ring types.
    Raw add(Raw a, Raw b) const;
    Raw sub(Raw a, Raw b) const;
    Raw neg(Raw a) const;
    Raw mul(Raw a, Raw b) const;
    Raw inv(Raw a) const;
    Raw pow(Raw a, std::uint64_t e) const;
    Raw raw_from_int(std::int64_t n) const;
    std::vector<std::uint64_t> digits(Raw a) const;
    std::string format(Raw a) const;

    Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus);
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    Raw mul_poly(Raw a, Raw b) const;
    void build_tables();

    std::uint64_t p_;
    unsigned k_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
    std::vector<std::uint64_t> pow_p_;
    // log/exp tables for extension fields with q <= 2^16
    std::vector<std::uint32_t> log_;
    std::vector<Raw> exp_;
};

bool is_prime(std::uint64_t n);

/// Irreducibility over F_p by trial division with every monic polynomial of
/// degree <= deg/2. Coefficients are c_0..c_deg.
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> poly);

/// Element of a finite field. Value type; the field is referenced, not owned.
class FieldElem {
public:
    FieldElem() = default;
    FieldElem(const Field& f, Field::Raw raw) : field_(&f), raw_(raw) {}

    const Field& field() const;
    bool has_field() const noexcept { return field_ != nullptr; }
    Field::Raw raw() const noexcept { return raw_; }
    std::vector<std::uint64_t> coeffs() const { return field().digits(raw_); }

    bool is_zero() const noexcept { return raw_ == 0; }
    bool is_one() const noexcept { return raw_ == 1; }

    FieldElem inv() const;
    FieldElem pow(std::uint64_t e) const;
    std::string to_string() const;

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& b) { return *this = *this + b; }
    FieldElem& operator*=(const FieldElem& b) { return *this = *this * b; }

    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.field_ == b.field_ && a.raw_ == b.raw_;
    }
    friend auto operator<=>(const FieldElem& a, const FieldElem& b) { return a.raw_ <=> b.raw_; }

private:
    const Field* field_ = nullptr;
    Field::Raw raw_ = 0;
};

/// Throws DomainMismatch unless both operands live in the same field.
const Field& common_field(const FieldElem& a, const FieldElem& b);

} // namespace homforge
