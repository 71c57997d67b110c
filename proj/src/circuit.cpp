#include "homforge/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace homforge {

GateId Circuit::push(Gate g) {
    if (gates_.size() >= std::numeric_limits<GateId>::max())
        throw Error("circuit too large");
    gates_.push_back(std::move(g));
    return static_cast<GateId>(gates_.size() - 1);
}

std::uint32_t Circuit::intern(const VarLabel& label) {
    auto [it, inserted] = label_index_.emplace(label, static_cast<std::uint32_t>(labels_.size()));
    if (inserted)
        labels_.push_back(label);
    return it->second;
}

GateId Circuit::add_const(std::int64_t value) { return push(Gate{GateKind::Const, value, 0, {}}); }

GateId Circuit::add_input(const VarLabel& label) { return push(Gate{GateKind::Input, 0, intern(label), {}}); }

GateId Circuit::add_add(std::vector<GateId> children) {
    if (children.empty())
        throw Error("add gate needs at least one child");
    for (GateId c : children)
        if (c >= gates_.size())
            throw Error("child " + std::to_string(c) + " does not precede its parent");
    return push(Gate{GateKind::Add, 0, 0, std::move(children)});
}

GateId Circuit::add_mul(std::vector<GateId> children) {
    if (children.empty())
        throw Error("mul gate needs at least one child");
    for (GateId c : children)
        if (c >= gates_.size())
            throw Error("child " + std::to_string(c) + " does not precede its parent");
    return push(Gate{GateKind::Mul, 0, 0, std::move(children)});
}

void Circuit::set_output(GateId g) {
    if (g >= gates_.size())
        throw Error("output gate " + std::to_string(g) + " does not exist");
    output_ = g;
}

GateId Circuit::output() const {
    if (!output_)
        throw Error("circuit has no output gate");
    return *output_;
}

std::size_t Circuit::num_wires() const noexcept {
    std::size_t w = 0;
    for (const auto& g : gates_)
        w += g.children.size();
    return w;
}

void Circuit::replace_with_const(GateId g, std::int64_t value) {
    auto& gate = gates_.at(g);
    gate = Gate{GateKind::Const, value, 0, {}};
}

void Circuit::replace_with_input(GateId g, const VarLabel& label) {
    auto idx = intern(label);
    gates_.at(g) = Gate{GateKind::Input, 0, idx, {}};
}

void Circuit::validate() const {
    if (!output_)
        throw Error("circuit has no output gate");
    if (*output_ >= gates_.size())
        throw Error("output gate out of range");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        switch (g.kind) {
        case GateKind::Const:
            break;
        case GateKind::Input:
            if (g.label >= labels_.size())
                throw Error("gate " + std::to_string(i) + " has an unknown label");
            break;
        case GateKind::Add:
        case GateKind::Mul:
            if (g.children.empty())
                throw Error("gate " + std::to_string(i) + " has no children");
            for (GateId c : g.children)
                if (c >= i)
                    throw Error("gate " + std::to_string(i) + " references gate " + std::to_string(c) +
                                " which does not precede it");
            break;
        }
    }
}

bool operator==(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.value == b.value && a.label == b.label && a.children == b.children;
}

bool operator==(const Circuit& a, const Circuit& b) {
    if (a.size() != b.size() || a.output_ != b.output_)
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Gate& ga = a.gates_[i];
        const Gate& gb = b.gates_[i];
        if (ga.kind != gb.kind || ga.children != gb.children)
            return false;
        if (ga.kind == GateKind::Const && ga.value != gb.value)
            return false;
        if (ga.kind == GateKind::Input && a.labels_[ga.label] != b.labels_[gb.label])
            return false;
    }
    return true;
}

IntPoly eval_symbolic(const Circuit& c, std::size_t term_bound) {
    IntPolyRing ring(IntegerRing{}, term_bound);
    return evaluate(c, ring, [&](const VarLabel& v) -> std::optional<IntPoly> { return ring.variable(v); });
}

FieldPoly eval_symbolic(const Circuit& c, const Field& field, std::size_t term_bound) {
    FieldPolyRing ring(FieldRing(field), term_bound);
    return evaluate(c, ring, [&](const VarLabel& v) -> std::optional<FieldPoly> { return ring.variable(v); });
}

bool check_skew(const Circuit& c) {
    for (const Gate& g : c.gates()) {
        if (g.kind != GateKind::Mul)
            continue;
        int internal = 0;
        for (GateId ch : g.children) {
            auto k = c.gate(ch).kind;
            if (k == GateKind::Add || k == GateKind::Mul)
                ++internal;
        }
        if (internal > 1)
            return false;
    }
    return true;
}

bool check_mult_disjoint(const Circuit& c) {
    const std::size_t n = c.size();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> below(n * words, 0);
    auto row = [&](std::size_t g) { return below.data() + g * words; };
    for (std::size_t g = 0; g < n; ++g) {
        auto* r = row(g);
        r[g / 64] |= std::uint64_t{1} << (g % 64);
        const Gate& gate = c.gate(static_cast<GateId>(g));
        for (GateId ch : gate.children) {
            const auto* rc = row(ch);
            for (std::size_t w = 0; w < words; ++w)
                r[w] |= rc[w];
        }
        if (gate.kind != GateKind::Mul)
            continue;
        for (std::size_t i = 0; i < gate.children.size(); ++i)
            for (std::size_t j = i + 1; j < gate.children.size(); ++j) {
                const auto* a = row(gate.children[i]);
                const auto* b = row(gate.children[j]);
                for (std::size_t w = 0; w < words; ++w)
                    if (a[w] & b[w])
                        return false;
            }
    }
    return true;
}

bool is_constant_free(const Circuit& c) {
    return std::all_of(c.gates().begin(), c.gates().end(), [](const Gate& g) {
        return g.kind != GateKind::Const || g.value == 0 || g.value == 1;
    });
}

BigInt count_parse_trees(const Circuit& c) {
    std::vector<BigInt> count(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(static_cast<GateId>(i));
        switch (g.kind) {
        case GateKind::Const:
        case GateKind::Input:
            count[i] = 1;
            break;
        case GateKind::Add:
            count[i] = 0;
            for (GateId ch : g.children)
                count[i] += count[ch];
            break;
        case GateKind::Mul:
            count[i] = 1;
            for (GateId ch : g.children)
                count[i] *= count[ch];
            break;
        }
    }
    return count[c.output()];
}

std::vector<ParseTree> enumerate_parse_trees(const Circuit& c, std::size_t bound) {
    if (!check_mult_disjoint(c))
        throw PreconditionError("parse-tree enumeration requires a multiplicatively disjoint circuit");
    BigInt total = count_parse_trees(c);
    if (total > bound)
        throw BudgetExceeded("circuit has " + total.str() + " parse trees, above the bound " + std::to_string(bound),
                             bound);

    // Every reachable gate has at most `total` trees, so memoizing per gate is safe.
    std::vector<std::optional<std::vector<ParseTree>>> memo(c.size());
    std::function<const std::vector<ParseTree>&(GateId)> trees = [&](GateId id) -> const std::vector<ParseTree>& {
        if (memo[id])
            return *memo[id];
        const Gate& g = c.gate(id);
        std::vector<ParseTree> out;
        switch (g.kind) {
        case GateKind::Const:
            out.push_back(ParseTree{{id}, BigInt(g.value), {}});
            break;
        case GateKind::Input:
            out.push_back(ParseTree{{id}, BigInt(1), monomial_of(c.label_of(id))});
            break;
        case GateKind::Add:
            for (GateId ch : g.children)
                for (const ParseTree& t : trees(ch)) {
                    ParseTree copy = t;
                    copy.gates.insert(std::lower_bound(copy.gates.begin(), copy.gates.end(), id), id);
                    out.push_back(std::move(copy));
                }
            break;
        case GateKind::Mul: {
            out.push_back(ParseTree{{id}, BigInt(1), {}});
            for (GateId ch : g.children) {
                const auto& sub = trees(ch);
                std::vector<ParseTree> next;
                next.reserve(out.size() * sub.size());
                for (const ParseTree& left : out)
                    for (const ParseTree& right : sub) {
                        ParseTree t;
                        std::merge(left.gates.begin(), left.gates.end(), right.gates.begin(), right.gates.end(),
                                   std::back_inserter(t.gates));
                        t.coefficient = left.coefficient * right.coefficient;
                        t.monomial = monomial_product(left.monomial, right.monomial);
                        next.push_back(std::move(t));
                    }
                out = std::move(next);
            }
            break;
        }
        }
        memo[id] = std::move(out);
        return *memo[id];
    };
    return trees(c.output());
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError("expected an integer, got '" + s + "'", line);
    return v;
}

} // namespace

Circuit read_circuit(std::istream& in) {
    Circuit c;
    std::string line;
    std::size_t lineno = 0;
    bool have_output = false;
    GateId output = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0][0] == '#')
            continue;
        try {
            if (tok[0] == "output") {
                if (tok.size() != 2)
                    throw ParseError("expected 'output <id>'", lineno);
                output = static_cast<GateId>(parse_int(tok[1], lineno));
                have_output = true;
                continue;
            }
            if (tok[0] != "gate" || tok.size() < 3)
                throw ParseError("expected 'gate <id> <kind> ...' or 'output <id>'", lineno);
            auto id = parse_int(tok[1], lineno);
            if (id != static_cast<std::int64_t>(c.size()))
                throw ParseError("gate ids must be dense and in order; expected " + std::to_string(c.size()), lineno);
            const std::string& kind = tok[2];
            if (kind == "const") {
                if (tok.size() != 4)
                    throw ParseError("expected 'gate <id> const <value>'", lineno);
                c.add_const(parse_int(tok[3], lineno));
            } else if (kind == "input") {
                if (tok.size() != 4)
                    throw ParseError("expected 'gate <id> input <label>'", lineno);
                c.add_input(VarLabel::parse(tok[3]));
            } else if (kind == "add" || kind == "mul") {
                std::vector<GateId> children;
                for (std::size_t i = 3; i < tok.size(); ++i) {
                    auto ch = parse_int(tok[i], lineno);
                    if (ch < 0)
                        throw ParseError("negative gate id", lineno);
                    children.push_back(static_cast<GateId>(ch));
                }
                if (kind == "add")
                    c.add_add(std::move(children));
                else
                    c.add_mul(std::move(children));
            } else {
                throw ParseError("unknown gate kind '" + kind + "'", lineno);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!have_output)
        throw ParseError("missing 'output' record", lineno);
    try {
        c.set_output(output);
    } catch (const Error& e) {
        throw ParseError(e.what(), lineno);
    }
    return c;
}

void write_circuit(std::ostream& out, const Circuit& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(static_cast<GateId>(i));
        out << "gate " << i << ' ';
        switch (g.kind) {
        case GateKind::Const:
            out << "const " << g.value;
            break;
        case GateKind::Input:
            out << "input " << c.label_of(static_cast<GateId>(i)).to_string();
            break;
        case GateKind::Add:
        case GateKind::Mul:
            out << (g.kind == GateKind::Add ? "add" : "mul");
            for (GateId ch : g.children)
                out << ' ' << ch;
            break;
        }
        out << '\n';
    }
    out << "output " << c.output() << '\n';
}

} // namespace homforge
