#pragma once

#include "homforge/field.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace homforge {

struct TruncCaps {
    std::size_t dz = 0;
    std::size_t dt = 0;
    friend bool operator==(const TruncCaps&, const TruncCaps&) = default;
};

/// Element of F_q[z,t] / (z^{dz+1}, t^{dt+1}), stored densely: entry (i,j) is
/// the coefficient of z^i t^j.
class TruncPoly {
public:
    TruncPoly() = default;
    TruncPoly(const Field& field, TruncCaps caps);

    static TruncPoly constant(const Field& field, TruncCaps caps, const FieldElem& c);
    /// c * z^i t^j, or zero when the monomial lies beyond the caps.
    static TruncPoly monomial(const Field& field, TruncCaps caps, std::size_t i, std::size_t j,
                              const FieldElem& c);

    const Field& field() const;
    TruncCaps caps() const noexcept { return caps_; }

    FieldElem coefficient(std::size_t dz, std::size_t dt) const;
    void set_coefficient(std::size_t dz, std::size_t dt, const FieldElem& c);

    bool is_zero() const noexcept;
    bool is_one() const noexcept;
    std::string to_string() const;

    friend TruncPoly operator+(const TruncPoly& a, const TruncPoly& b);
    friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
    TruncPoly& operator+=(const TruncPoly& b);
    friend bool operator==(const TruncPoly& a, const TruncPoly& b);

private:
    std::size_t index(std::size_t i, std::size_t j) const noexcept { return i * (caps_.dt + 1) + j; }

    const Field* field_ = nullptr;
    TruncCaps caps_;
    std::vector<Field::Raw> coeffs_;
};

} // namespace homforge
