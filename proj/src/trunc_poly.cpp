#include "homforge/trunc_poly.hpp"

#include "homforge/error.hpp"

#include <sstream>

namespace homforge {

namespace {

void check_compatible(const TruncPoly& a, const TruncPoly& b) {
    if (&a.field() != &b.field())
        throw DomainMismatch("truncated polynomials over different fields");
    if (!(a.caps() == b.caps()))
        throw DomainMismatch("truncated polynomials with different caps (" + std::to_string(a.caps().dz) +
                             "," + std::to_string(a.caps().dt) + ") vs (" + std::to_string(b.caps().dz) +
                             "," + std::to_string(b.caps().dt) + ")");
}

} // namespace

TruncPoly::TruncPoly(const Field& field, TruncCaps caps)
    : field_(&field), caps_(caps), coeffs_((caps.dz + 1) * (caps.dt + 1), 0) {}

TruncPoly TruncPoly::constant(const Field& field, TruncCaps caps, const FieldElem& c) {
    TruncPoly r(field, caps);
    r.set_coefficient(0, 0, c);
    return r;
}

TruncPoly TruncPoly::monomial(const Field& field, TruncCaps caps, std::size_t i, std::size_t j,
                              const FieldElem& c) {
    TruncPoly r(field, caps);
    if (i <= caps.dz && j <= caps.dt)
        r.set_coefficient(i, j, c);
    return r;
}

const Field& TruncPoly::field() const {
    if (!field_)
        throw Error("truncated polynomial has no field");
    return *field_;
}

FieldElem TruncPoly::coefficient(std::size_t dz, std::size_t dt) const {
    if (dz > caps_.dz || dt > caps_.dt)
        throw Error("coefficient (" + std::to_string(dz) + "," + std::to_string(dt) + ") outside caps (" +
                    std::to_string(caps_.dz) + "," + std::to_string(caps_.dt) + ")");
    return FieldElem(field(), coeffs_[index(dz, dt)]);
}

void TruncPoly::set_coefficient(std::size_t dz, std::size_t dt, const FieldElem& c) {
    if (dz > caps_.dz || dt > caps_.dt)
        throw Error("coefficient index outside caps");
    if (&c.field() != &field())
        throw DomainMismatch("coefficient from a different field");
    coeffs_[index(dz, dt)] = c.raw();
}

bool TruncPoly::is_zero() const noexcept {
    for (auto c : coeffs_)
        if (c != 0)
            return false;
    return true;
}

bool TruncPoly::is_one() const noexcept {
    if (coeffs_.empty() || coeffs_[0] != 1)
        return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0)
            return false;
    return true;
}

TruncPoly operator+(const TruncPoly& a, const TruncPoly& b) {
    TruncPoly r = a;
    r += b;
    return r;
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& b) {
    check_compatible(*this, b);
    const Field& f = *field_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (b.coeffs_[i] != 0)
            coeffs_[i] = f.add(coeffs_[i], b.coeffs_[i]);
    return *this;
}

// Dense convolution, skipping zero entries of either operand; products with
// z-degree > dz or t-degree > dt are dropped.
TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    check_compatible(a, b);
    const Field& f = *a.field_;
    const TruncCaps caps = a.caps_;
    TruncPoly r(f, caps);
    for (std::size_t i1 = 0; i1 <= caps.dz; ++i1) {
        for (std::size_t j1 = 0; j1 <= caps.dt; ++j1) {
            Field::Raw ca = a.coeffs_[a.index(i1, j1)];
            if (ca == 0)
                continue;
            for (std::size_t i2 = 0; i1 + i2 <= caps.dz; ++i2) {
                for (std::size_t j2 = 0; j1 + j2 <= caps.dt; ++j2) {
                    Field::Raw cb = b.coeffs_[b.index(i2, j2)];
                    if (cb == 0)
                        continue;
                    auto& slot = r.coeffs_[r.index(i1 + i2, j1 + j2)];
                    slot = f.add(slot, f.mul(ca, cb));
                }
            }
        }
    }
    return r;
}

bool operator==(const TruncPoly& a, const TruncPoly& b) {
    return a.field_ == b.field_ && a.caps_ == b.caps_ && a.coeffs_ == b.coeffs_;
}

std::string TruncPoly::to_string() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i <= caps_.dz; ++i) {
        for (std::size_t j = 0; j <= caps_.dt; ++j) {
            Field::Raw c = coeffs_[index(i, j)];
            if (c == 0)
                continue;
            if (!first)
                out << " + ";
            first = false;
            bool bare = (i > 0 || j > 0) && c == 1;
            if (!bare) {
                std::string s = field().format(c);
                if (field().k() > 1 && (i > 0 || j > 0))
                    out << '(' << s << ')';
                else
                    out << s;
            }
            if (i > 0)
                out << 'z' << (i > 1 ? "^" + std::to_string(i) : "");
            if (j > 0)
                out << 't' << (j > 1 ? "^" + std::to_string(j) : "");
        }
    }
    if (first)
        out << '0';
    return out.str();
}

} // namespace homforge
