#include "homforge/sparse_poly.hpp"

namespace homforge {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.reserve(a.size() + b.size());
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first)
            r.push_back(*ia++);
        else if (ib->first < ia->first)
            r.push_back(*ib++);
        else {
            r.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    r.insert(r.end(), ia, a.end());
    r.insert(r.end(), ib, b.end());
    return r;
}

Monomial monomial_of(const VarLabel& v, std::uint32_t exponent) {
    if (exponent == 0)
        return {};
    return {{v, exponent}};
}

std::uint64_t total_degree(const Monomial& m) {
    std::uint64_t d = 0;
    for (const auto& [v, e] : m)
        d += e;
    return d;
}

std::uint32_t exponent_of(const Monomial& m, const VarLabel& v) {
    for (const auto& [w, e] : m)
        if (w == v)
            return e;
    return 0;
}

std::string to_string(const Monomial& m) {
    if (m.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i)
            s += '*';
        s += m[i].first.to_string();
        if (m[i].second != 1)
            s += '^' + std::to_string(m[i].second);
    }
    return s;
}

FieldPoly reduce_mod(const IntPoly& poly, const Field& field) {
    FieldPoly r;
    BigInt p = field.p();
    for (const auto& [m, c] : poly.terms()) {
        BigInt red = c % p;
        if (red < 0)
            red += p;
        r.add_term(m, field.from_int(static_cast<std::int64_t>(red)));
    }
    return r;
}

} // namespace homforge
