#include "homforge/hom_compiler.hpp"

#include <algorithm>
#include <optional>

namespace homforge {

InvalidDecomposition::InvalidDecomposition(std::vector<std::string> violations)
    : Error("invalid nice decomposition: " + (violations.empty() ? std::string("unknown") : violations.front()) +
            (violations.size() > 1 ? " (and " + std::to_string(violations.size() - 1) + " more)" : "")),
      violations_(std::move(violations)) {}

BigInt compile_size_bound(int g_vertices, int h_vertices, std::size_t h_edges, int width) {
    BigInt b = 2 * BigInt(g_vertices);
    for (int i = 0; i <= width; ++i)
        b *= h_vertices;
    return b * (2 * BigInt(h_vertices) + 2 * BigInt(h_edges));
}

namespace {

// Emits gates with local simplification: constant factors 1 and terms 0
// disappear and single-child Add/Mul collapse to the child.
class Builder {
public:
    explicit Builder(Circuit& c) : c_(c) {}

    GateId zero() {
        if (!zero_)
            zero_ = c_.add_const(0);
        return *zero_;
    }
    GateId one() {
        if (!one_)
            one_ = c_.add_const(1);
        return *one_;
    }
    bool is_zero(GateId g) const { return zero_ && g == *zero_; }
    bool is_one(GateId g) const { return one_ && g == *one_; }

    GateId input(const VarLabel& label) {
        auto it = inputs_.find(label);
        if (it != inputs_.end())
            return it->second;
        GateId g = c_.add_input(label);
        inputs_.emplace(label, g);
        return g;
    }

    GateId mul(const std::vector<GateId>& factors) {
        std::vector<GateId> kept;
        for (GateId f : factors) {
            if (is_zero(f))
                return zero();
            if (!is_one(f))
                kept.push_back(f);
        }
        if (kept.empty())
            return one();
        if (kept.size() == 1)
            return kept[0];
        return c_.add_mul(std::move(kept));
    }

    GateId add(const std::vector<GateId>& terms) {
        std::vector<GateId> kept;
        for (GateId t : terms)
            if (!is_zero(t))
                kept.push_back(t);
        if (kept.empty())
            return zero();
        if (kept.size() == 1)
            return kept[0];
        return c_.add_add(std::move(kept));
    }

private:
    Circuit& c_;
    std::optional<GateId> zero_, one_;
    std::map<VarLabel, GateId> inputs_;
};

std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--)
        r *= b;
    return r;
}

} // namespace

CompiledHom compile(const Graph& g, const NiceTreeDecomp& d, const Graph& h, const CompileOptions& opts) {
    if (h.n() < 1)
        throw PreconditionError("target graph needs at least one vertex");
    auto violations = validate_nice(d, g);
    if (!violations.empty())
        throw InvalidDecomposition(std::move(violations));

    CompiledHom out;
    Builder b(out.circuit);
    const std::size_t nh = static_cast<std::size_t>(h.n());

    // Post-order over the decomposition.
    std::vector<int> order;
    {
        std::vector<std::pair<int, bool>> stack{{d.root, false}};
        while (!stack.empty()) {
            auto [t, expanded] = stack.back();
            stack.pop_back();
            if (expanded) {
                order.push_back(t);
                continue;
            }
            stack.emplace_back(t, true);
            for (auto it = d.nodes[t].children.rbegin(); it != d.nodes[t].children.rend(); ++it)
                stack.emplace_back(*it, false);
        }
    }

    std::vector<NodeGates> tables(d.nodes.size());
    auto decode = [&](std::size_t code, std::size_t k) {
        std::vector<Vertex> phi(k);
        for (std::size_t i = 0; i < k; ++i) {
            phi[i] = static_cast<Vertex>(code % nh) + 1;
            code /= nh;
        }
        return phi;
    };
    auto encode = [&](const std::vector<Vertex>& phi) {
        std::size_t code = 0;
        for (std::size_t i = phi.size(); i-- > 0;)
            code = code * nh + static_cast<std::size_t>(phi[i] - 1);
        return code;
    };

    for (int id : order) {
        const DecompNode& t = d.nodes[id];
        NodeGates& cur = tables[id];
        cur.bag = t.bag;
        const std::size_t k = t.bag.size();
        const std::size_t size = ipow(nh, k);
        cur.main.resize(size);
        cur.prime.resize(size);

        switch (t.kind) {
        case NodeKind::Leaf: {
            const Vertex u = t.bag[0];
            for (std::size_t a = 0; a < nh; ++a) {
                cur.main[a] = b.input(VarLabel::z(u, static_cast<std::int64_t>(a + 1)));
                cur.prime[a] = b.one();
            }
            break;
        }
        case NodeKind::Introduce: {
            const NodeGates& child = tables[t.children[0]];
            const Vertex u = t.v;
            const std::size_t pos = static_cast<std::size_t>(std::find(t.bag.begin(), t.bag.end(), u) - t.bag.begin());
            std::vector<std::size_t> nbr_pos; // positions of N(u) in the bag
            for (std::size_t i = 0; i < k; ++i)
                if (i != pos && g.has_edge(u, t.bag[i]))
                    nbr_pos.push_back(i);
            for (std::size_t code = 0; code < size; ++code) {
                auto phi = decode(code, k);
                const Vertex hu = phi[pos];
                bool ok = true;
                std::vector<GateId> factors{b.input(VarLabel::z(u, hu))};
                for (std::size_t i : nbr_pos) {
                    if (!h.has_edge(phi[i], hu)) {
                        ok = false;
                        break;
                    }
                    factors.push_back(b.input(VarLabel::edge_y(phi[i], hu)));
                }
                if (!ok) {
                    cur.main[code] = cur.prime[code] = b.zero();
                    continue;
                }
                auto rest = phi;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
                const std::size_t cc = encode(rest);
                factors.push_back(child.main[cc]);
                cur.main[code] = b.mul(factors);
                cur.prime[code] = child.prime[cc];
            }
            break;
        }
        case NodeKind::Forget: {
            const NodeGates& child = tables[t.children[0]];
            const Vertex u = t.v;
            const std::size_t pos =
                static_cast<std::size_t>(std::find(child.bag.begin(), child.bag.end(), u) - child.bag.begin());
            std::vector<std::size_t> nbr_pos; // positions of N(u) in this (smaller) bag
            for (std::size_t i = 0; i < k; ++i)
                if (g.has_edge(u, t.bag[i]))
                    nbr_pos.push_back(i);
            for (std::size_t code = 0; code < size; ++code) {
                auto phi = decode(code, k);
                std::vector<GateId> main_terms, prime_terms;
                for (Vertex a = 1; a <= h.n(); ++a) {
                    auto ext = phi;
                    ext.insert(ext.begin() + static_cast<std::ptrdiff_t>(pos), a);
                    const std::size_t cc = encode(ext);
                    main_terms.push_back(child.main[cc]);
                    if (b.is_zero(child.prime[cc]))
                        continue;
                    bool ok = true;
                    std::vector<GateId> factors{b.input(VarLabel::z(u, a))};
                    for (std::size_t i : nbr_pos) {
                        if (!h.has_edge(phi[i], a)) {
                            ok = false;
                            break;
                        }
                        factors.push_back(b.input(VarLabel::edge_y(phi[i], a)));
                    }
                    if (!ok)
                        continue;
                    factors.push_back(child.prime[cc]);
                    prime_terms.push_back(b.mul(factors));
                }
                cur.main[code] = b.add(main_terms);
                cur.prime[code] = b.add(prime_terms);
            }
            break;
        }
        case NodeKind::Join: {
            const NodeGates& c1 = tables[t.children[0]];
            const NodeGates& c2 = tables[t.children[1]];
            for (std::size_t code = 0; code < size; ++code) {
                cur.main[code] = b.mul({c1.main[code], c2.prime[code]});
                cur.prime[code] = b.mul({c1.prime[code], c2.prime[code]});
            }
            break;
        }
        }
        if (!opts.keep_tables)
            for (int c : t.children) {
                tables[c].main = {};
                tables[c].prime = {};
            }
    }

    out.circuit.set_output(tables[d.root].main.at(0));
    if (opts.keep_tables)
        out.tables = std::move(tables);

    CompileMeta& m = out.meta;
    m.g_vertices = g.n();
    m.h_vertices = h.n();
    m.h_edges = h.num_edges();
    m.width = width(d);
    m.gates = out.circuit.size();
    m.wires = out.circuit.num_wires();
    m.size_bound = compile_size_bound(m.g_vertices, m.h_vertices, m.h_edges, m.width);
    m.skew = check_skew(out.circuit);
    if (BigInt(m.gates) > m.size_bound)
        throw Error("compiled circuit has " + std::to_string(m.gates) + " gates, above the bound " +
                    m.size_bound.str());
    return out;
}

Circuit project(const Circuit& c, const std::function<ProjTarget(const VarLabel&)>& sigma) {
    Circuit r;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(static_cast<GateId>(i));
        switch (g.kind) {
        case GateKind::Const:
            r.add_const(g.value);
            break;
        case GateKind::Input: {
            ProjTarget t = sigma(c.label_of(static_cast<GateId>(i)));
            if (t.kind == ProjTarget::Kind::Var)
                r.add_input(t.var);
            else
                r.add_const(t.kind == ProjTarget::Kind::One ? 1 : 0);
            break;
        }
        case GateKind::Add:
            r.add_add(g.children);
            break;
        case GateKind::Mul:
            r.add_mul(g.children);
            break;
        }
    }
    if (c.has_output())
        r.set_output(c.output());
    return r;
}

Circuit project(const Circuit& c, const std::map<VarLabel, ProjTarget>& sigma) {
    return project(c, [&](const VarLabel& v) {
        auto it = sigma.find(v);
        return it == sigma.end() ? ProjTarget::to(v) : it->second;
    });
}

Circuit specialize_Z(const CompiledHom& c) {
    return project(c.circuit,
                   [](const VarLabel& v) { return v.kind() == VarKind::Z ? ProjTarget::one() : ProjTarget::to(v); });
}

} // namespace homforge
