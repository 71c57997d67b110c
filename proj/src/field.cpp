#include "homforge/field.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace homforge {

namespace {

using u128 = unsigned __int128;

struct FieldKey {
    std::uint64_t p;
    std::vector<std::uint64_t> modulus;
    auto operator<=>(const FieldKey&) const = default;
};

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<FieldKey, std::unique_ptr<Field>>& registry() {
    static std::map<FieldKey, std::unique_ptr<Field>> r;
    return r;
}

// Built-in moduli c_0..c_k keyed by q.
const std::map<std::uint64_t, std::vector<std::uint64_t>>& builtin_moduli() {
    static const std::map<std::uint64_t, std::vector<std::uint64_t>> table = {
        {4, {1, 1, 1}},        // x^2 + x + 1
        {8, {1, 1, 0, 1}},     // x^3 + x + 1
        {9, {1, 0, 1}},        // x^2 + 1
        {16, {1, 1, 0, 0, 1}}, // x^4 + x + 1
        {25, {2, 0, 1}},       // x^2 + 2
        {27, {1, 2, 0, 1}},    // x^3 + 2x + 1
        {49, {1, 0, 1}},       // x^2 + 1
    };
    return table;
}

std::uint64_t checked_pow(std::uint64_t p, unsigned k) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (q > (std::uint64_t{1} << 32) / p)
            throw Error("field too large: " + std::to_string(p) + "^" + std::to_string(k));
        q *= p;
    }
    return q;
}

// Remainder of a modulo b over F_p; b nonzero with a nonzero leading coefficient.
std::vector<std::uint64_t> poly_rem(std::vector<std::uint64_t> a, std::span<const std::uint64_t> b,
                                    std::uint64_t p) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0)
            v.pop_back();
    };
    trim(a);
    std::size_t db = b.size() - 1;
    while (db > 0 && b[db] == 0)
        --db;
    std::uint64_t lead = b[db];
    // inverse of the leading coefficient by Fermat
    std::uint64_t lead_inv = 1, base = lead, e = p - 2;
    while (e) {
        if (e & 1)
            lead_inv = static_cast<std::uint64_t>(static_cast<u128>(lead_inv) * base % p);
        base = static_cast<std::uint64_t>(static_cast<u128>(base) * base % p);
        e >>= 1;
    }
    while (a.size() > db) {
        std::size_t shift = a.size() - 1 - db;
        std::uint64_t factor = static_cast<std::uint64_t>(static_cast<u128>(a.back()) * lead_inv % p);
        for (std::size_t i = 0; i <= db; ++i) {
            std::uint64_t sub = static_cast<std::uint64_t>(static_cast<u128>(factor) * b[i] % p);
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        trim(a);
    }
    return a;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> poly) {
    std::size_t deg = poly.size() - 1;
    while (deg > 0 && poly[deg] % p == 0)
        --deg;
    if (deg == 0)
        return false;
    if (deg == 1)
        return true;
    std::vector<std::uint64_t> f(poly.begin(), poly.begin() + static_cast<std::ptrdiff_t>(deg) + 1);
    for (auto& c : f)
        c %= p;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        // every monic polynomial of degree d: low coefficients run through p^d values
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::uint64_t> g(d + 1);
            std::uint64_t rest = idx;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = rest % p;
                rest /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty())
                return false;
        }
    }
    return true;
}

Field::Field(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus)
    : p_(p), k_(k), q_(checked_pow(p, k)), modulus_(std::move(modulus)) {
    pow_p_.resize(k_ + 1);
    pow_p_[0] = 1;
    for (unsigned i = 1; i <= k_; ++i)
        pow_p_[i] = pow_p_[i - 1] * p_;
    build_tables();
}

const Field& Field::get(std::uint64_t p, unsigned k) {
    if (k == 0)
        throw Error("extension degree must be >= 1");
    if (k == 1)
        return get(p, 1, {});
    if (!is_prime(p))
        throw Error("characteristic " + std::to_string(p) + " is not prime");
    std::uint64_t q = checked_pow(p, k);
    auto it = builtin_moduli().find(q);
    if (it == builtin_moduli().end())
        throw Error("no built-in modulus for q = " + std::to_string(q) + "; supply one with --modulus");
    return get(p, k, it->second);
}

const Field& Field::get(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus) {
    if (!is_prime(p))
        throw Error("characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 62))
        throw Error("characteristic too large");
    if (k == 0)
        throw Error("extension degree must be >= 1");
    if (k == 1) {
        if (!modulus.empty() && modulus.size() != 2)
            throw Error("prime field takes no modulus of degree > 1");
        modulus.clear();
    } else {
        if (modulus.size() != k + 1)
            throw Error("modulus must have exactly k+1 = " + std::to_string(k + 1) + " coefficients");
        for (auto& c : modulus)
            c %= p;
        if (modulus.back() != 1)
            throw Error("modulus must be monic");
        if (!is_irreducible(p, modulus))
            throw Error("modulus is not irreducible over F_" + std::to_string(p));
    }
    std::lock_guard lock(registry_mutex());
    FieldKey key{p, modulus};
    auto& slot = registry()[key];
    if (!slot)
        slot = std::make_unique<Field>(p, k, std::move(modulus));
    return *slot;
}

const Field& Field::parse(std::string_view spec, std::optional<std::vector<std::uint64_t>> modulus) {
    auto parse_num = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
            throw Error("bad field spec '" + std::string(spec) + "', expected p or p^k");
        return v;
    };
    std::uint64_t p = 0;
    unsigned k = 1;
    if (auto caret = spec.find('^'); caret != std::string_view::npos) {
        p = parse_num(spec.substr(0, caret));
        k = static_cast<unsigned>(parse_num(spec.substr(caret + 1)));
    } else {
        p = parse_num(spec);
    }
    if (modulus)
        return get(p, k, *modulus);
    return get(p, k);
}

std::string Field::name() const {
    if (k_ == 1)
        return "F_" + std::to_string(p_);
    return "F_" + std::to_string(p_) + "^" + std::to_string(k_);
}

void Field::build_tables() {
    if (k_ == 1 || q_ > 65536)
        return;
    // find a generator of the multiplicative group
    for (Raw g = 2; g < q_; ++g) {
        std::vector<Raw> powers;
        powers.reserve(q_ - 1);
        Raw x = 1;
        do {
            powers.push_back(x);
            x = mul_poly(x, g);
        } while (x != 1 && powers.size() < q_);
        if (powers.size() != q_ - 1)
            continue;
        exp_.resize(2 * (q_ - 1));
        log_.assign(q_, 0);
        for (std::size_t i = 0; i < powers.size(); ++i) {
            exp_[i] = powers[i];
            exp_[i + q_ - 1] = powers[i];
            log_[powers[i]] = static_cast<std::uint32_t>(i);
        }
        return;
    }
    throw Error("no generator found for " + name());
}

FieldElem Field::zero() const { return FieldElem(*this, 0); }
FieldElem Field::one() const { return FieldElem(*this, 1); }
FieldElem Field::from_int(std::int64_t n) const { return FieldElem(*this, raw_from_int(n)); }

FieldElem Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
    if (coeffs.size() > k_)
        throw Error("too many coefficients for " + name());
    Raw r = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        r += (coeffs[i] % p_) * pow_p_[i];
    return FieldElem(*this, r);
}

FieldElem Field::element(std::uint64_t i) const {
    if (i >= q_)
        throw Error("element index out of range");
    return FieldElem(*this, i);
}

Field::Raw Field::raw_from_int(std::int64_t n) const {
    auto pp = static_cast<std::int64_t>(p_);
    std::int64_t r = n % pp;
    if (r < 0)
        r += pp;
    return static_cast<Raw>(r);
}

Field::Raw Field::add(Raw a, Raw b) const {
    if (k_ == 1) {
        Raw s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Raw r = 0;
    for (unsigned i = 0; i < k_; ++i) {
        Raw da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        Raw d = da + db;
        if (d >= p_)
            d -= p_;
        r += d * pow_p_[i];
    }
    return r;
}

Field::Raw Field::neg(Raw a) const {
    if (k_ == 1)
        return a == 0 ? 0 : p_ - a;
    Raw r = 0;
    for (unsigned i = 0; i < k_; ++i) {
        Raw d = a % p_;
        a /= p_;
        r += (d == 0 ? 0 : p_ - d) * pow_p_[i];
    }
    return r;
}

Field::Raw Field::sub(Raw a, Raw b) const { return add(a, neg(b)); }

Field::Raw Field::mul_poly(Raw a, Raw b) const {
    auto da = digits(a), db = digits(b);
    std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i)
        for (unsigned j = 0; j < k_; ++j)
            prod[i + j] = static_cast<std::uint64_t>((prod[i + j] + static_cast<u128>(da[i]) * db[j]) % p_);
    auto rem = poly_rem(std::move(prod), modulus_, p_);
    Raw r = 0;
    for (std::size_t i = 0; i < rem.size(); ++i)
        r += rem[i] * pow_p_[i];
    return r;
}

Field::Raw Field::mul(Raw a, Raw b) const {
    if (k_ == 1)
        return static_cast<Raw>(static_cast<u128>(a) * b % p_);
    if (a == 0 || b == 0)
        return 0;
    if (!exp_.empty())
        return exp_[log_[a] + log_[b]];
    return mul_poly(a, b);
}

Field::Raw Field::pow(Raw a, std::uint64_t e) const {
    Raw result = 1;
    while (e) {
        if (e & 1)
            result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

Field::Raw Field::inv(Raw a) const {
    if (a == 0)
        throw Error("inverse of zero in " + name());
    if (!exp_.empty())
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
}

std::vector<std::uint64_t> Field::digits(Raw a) const {
    std::vector<std::uint64_t> d(k_);
    for (unsigned i = 0; i < k_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

std::string Field::format(Raw a) const {
    if (k_ == 1)
        return std::to_string(a);
    auto d = digits(a);
    std::ostringstream out;
    bool first = true;
    for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
        if (d[i] == 0)
            continue;
        if (!first)
            out << '+';
        first = false;
        if (i == 0) {
            out << d[i];
            continue;
        }
        if (d[i] != 1)
            out << d[i];
        out << 'x';
        if (i > 1)
            out << '^' << i;
    }
    if (first)
        out << '0';
    return out.str();
}

const Field& FieldElem::field() const {
    if (!field_)
        throw Error("field element has no field");
    return *field_;
}

const Field& common_field(const FieldElem& a, const FieldElem& b) {
    if (!a.has_field() || !b.has_field())
        throw Error("field element has no field");
    if (&a.field() != &b.field())
        throw DomainMismatch("operands from different fields: " + a.field().name() + " and " +
                             b.field().name());
    return a.field();
}

FieldElem FieldElem::inv() const { return FieldElem(field(), field().inv(raw_)); }
FieldElem FieldElem::pow(std::uint64_t e) const { return FieldElem(field(), field().pow(raw_, e)); }
std::string FieldElem::to_string() const { return field().format(raw_); }
FieldElem FieldElem::operator-() const { return FieldElem(field(), field().neg(raw_)); }

FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    const Field& f = common_field(a, b);
    return FieldElem(f, f.add(a.raw_, b.raw_));
}

FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    const Field& f = common_field(a, b);
    return FieldElem(f, f.sub(a.raw_, b.raw_));
}

FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    const Field& f = common_field(a, b);
    return FieldElem(f, f.mul(a.raw_, b.raw_));
}

FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    const Field& f = common_field(a, b);
    return FieldElem(f, f.mul(a.raw_, f.inv(b.raw_)));
}

} // namespace homforge
