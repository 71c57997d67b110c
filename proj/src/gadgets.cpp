#include "homforge/gadgets.hpp"

#include "homforge/error.hpp"
#include "homforge/homomorphism.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <deque>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace homforge {

namespace {

const VarLabel kY = VarLabel::scalar('y');

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts)
        out += (out.empty() ? "" : "; ") + p;
    return out;
}

Edge canonical(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// Incremental construction of gadget graphs.
class GadgetBuilder {
public:
    explicit GadgetBuilder(GadgetGraph& out) : out_(out) {}

    Vertex vertex() { return out_.graph.add_vertex(); }

    int block(const Graph& tmpl, int kind, int level, int node) {
        BlockCopy b;
        b.kind = kind;
        b.level = level;
        b.node = node;
        b.offset = out_.graph.n();
        b.size = tmpl.n();
        for (int i = 0; i < tmpl.n(); ++i)
            vertex();
        for (auto [u, v] : tmpl.edges())
            out_.graph.add_edge(b.offset + u, b.offset + v);
        out_.blocks.push_back(b);
        return static_cast<int>(out_.blocks.size()) - 1;
    }

    // Path from `from` to `to` with `interior` inner vertices.
    PathSegment& path(Vertex from, Vertex to, int interior, int from_block, int to_block) {
        PathSegment seg;
        seg.from = from;
        seg.to = to;
        seg.from_block = from_block;
        seg.to_block = to_block;
        Vertex prev = from;
        for (int i = 0; i < interior; ++i) {
            Vertex w = vertex();
            seg.interior.push_back(w);
            out_.graph.add_edge(prev, w);
            prev = w;
        }
        out_.graph.add_edge(prev, to);
        out_.paths.push_back(std::move(seg));
        return out_.paths.back();
    }

    void label(Vertex u, Vertex v, const EdgeLabel& l) {
        if (l)
            out_.labels[canonical(u, v)] = l;
    }

private:
    GadgetGraph& out_;
};

void require_certified(const GadgetTriple& t, bool need_triple) {
    if (need_triple && t.pair_only)
        throw PreconditionError("this construction needs a triple I_0, I_1, I_2, not a pair");
    auto bad = certify(t);
    if (!bad.empty())
        throw PreconditionError("gadget family failed certification: " + join(bad));
}

// Replaces every occurrence of `var` by the field constant `value`.
FieldPoly substitute(const FieldPoly& p, const VarLabel& var, const FieldElem& value) {
    FieldPoly r;
    for (const auto& [m, c] : p.terms()) {
        Monomial rest;
        FieldElem coeff = c;
        for (const auto& [v, e] : m) {
            if (v == var)
                coeff *= value.pow(e);
            else
                rest.emplace_back(v, e);
        }
        r.add_term(std::move(rest), coeff);
    }
    return r;
}

LayeredBP pad_two_layers(const LayeredBP& bp) {
    LayeredBP p = bp;
    const int L = bp.layers();
    p.layer_sizes.push_back(1);
    p.layer_sizes.push_back(1);
    p.arcs.push_back(BPArc{L, bp.sink, 1, std::nullopt});
    p.arcs.push_back(BPArc{L + 1, 1, 1, std::nullopt});
    p.sink = 1;
    return p;
}

} // namespace

std::string to_string(const EdgeLabel& l) { return l ? l->to_string() : "1"; }

// ---------------------------------------------------------------------------
// Layered branching programs

int LayeredBP::width() const {
    return layer_sizes.empty() ? 0 : *std::max_element(layer_sizes.begin(), layer_sizes.end());
}

int LayeredBP::num_nodes() const { return std::accumulate(layer_sizes.begin(), layer_sizes.end(), 0); }

Vertex LayeredBP::vertex_of(int layer, int index) const {
    return std::accumulate(layer_sizes.begin(), layer_sizes.begin() + (layer - 1), 0) + index;
}

std::vector<std::string> validate_bp(const LayeredBP& bp) {
    std::vector<std::string> bad;
    const int L = bp.layers();
    if (L < 2)
        bad.push_back("a branching program needs at least 2 layers");
    for (int l = 1; l <= L; ++l)
        if (bp.layer_sizes[l - 1] < 1)
            bad.push_back("layer " + std::to_string(l) + " is empty");
    if (!bad.empty())
        return bad;
    if (bp.source < 1 || bp.source > bp.layer_sizes.front())
        bad.push_back("source is not a node of the first layer");
    if (bp.sink < 1 || bp.sink > bp.layer_sizes.back())
        bad.push_back("sink is not a node of the last layer");
    std::set<std::array<int, 3>> seen;
    for (const auto& a : bp.arcs) {
        const std::string name =
            "arc " + std::to_string(a.layer) + " " + std::to_string(a.from) + " " + std::to_string(a.to);
        if (a.layer < 1 || a.layer >= L || a.from < 1 || a.from > bp.layer_sizes[a.layer - 1] || a.to < 1 ||
            a.to > bp.layer_sizes[a.layer]) {
            bad.push_back(name + " does not join existing nodes of consecutive layers");
            continue;
        }
        if (!seen.insert({a.layer, a.from, a.to}).second)
            bad.push_back(name + " is a parallel arc");
        if (a.label && *a.label == kY)
            bad.push_back(name + " uses the reserved variable y");
    }
    return bad;
}

namespace {

void require_valid(const LayeredBP& bp) {
    auto bad = validate_bp(bp);
    if (!bad.empty())
        throw PreconditionError("invalid branching program: " + join(bad));
}

template <class V, class Step>
V bp_sum(const LayeredBP& bp, V zero, V one, Step step) {
    require_valid(bp);
    std::vector<V> cur(bp.layer_sizes[0] + 1, zero);
    cur[bp.source] = one;
    for (int l = 1; l < bp.layers(); ++l) {
        std::vector<V> next(bp.layer_sizes[l] + 1, zero);
        for (const auto& a : bp.arcs)
            if (a.layer == l)
                next[a.to] = next[a.to] + step(cur[a.from], a.label);
        cur = std::move(next);
    }
    return cur[bp.sink];
}

} // namespace

IntPoly bp_polynomial(const LayeredBP& bp) {
    return bp_sum<IntPoly>(bp, IntPoly{}, IntPoly::constant(1), [](const IntPoly& p, const EdgeLabel& l) {
        return l ? p * IntPoly::term(monomial_of(*l), 1) : p;
    });
}

BigInt count_bp_paths(const LayeredBP& bp) {
    return bp_sum<BigInt>(bp, BigInt(0), BigInt(1), [](const BigInt& c, const EdgeLabel&) { return c; });
}

Graph bp_graph(const LayeredBP& bp) {
    require_valid(bp);
    Graph g(bp.num_nodes());
    for (const auto& a : bp.arcs)
        g.add_edge(bp.vertex_of(a.layer, a.from), bp.vertex_of(a.layer + 1, a.to));
    return g;
}

LayeredBP random_bp(int layers, int max_width, std::mt19937_64& rng) {
    if (layers < 2 || max_width < 1)
        throw PreconditionError("random_bp needs at least 2 layers and width 1");
    std::uniform_int_distribution<int> size(1, max_width);
    std::bernoulli_distribution coin(0.5);
    LayeredBP bp;
    for (int l = 0; l < layers; ++l)
        bp.layer_sizes.push_back(size(rng));
    bp.source = std::uniform_int_distribution<int>(1, bp.layer_sizes.front())(rng);
    bp.sink = std::uniform_int_distribution<int>(1, bp.layer_sizes.back())(rng);
    std::set<std::array<int, 3>> arcs;
    for (int l = 1; l < layers; ++l)
        for (int i = 1; i <= bp.layer_sizes[l - 1]; ++i)
            for (int j = 1; j <= bp.layer_sizes[l]; ++j)
                if (coin(rng))
                    arcs.insert({l, i, j});
    int prev = bp.source;
    for (int l = 1; l < layers; ++l) {
        int next = l + 1 == layers ? bp.sink : std::uniform_int_distribution<int>(1, bp.layer_sizes[l])(rng);
        arcs.insert({l, prev, next});
        prev = next;
    }
    int fresh = 0;
    for (const auto& a : arcs)
        bp.arcs.push_back(BPArc{a[0], a[1], a[2], VarLabel::x(++fresh)});
    return bp;
}

LayeredBP read_bp(std::istream& in) {
    LayeredBP bp;
    std::string line;
    std::size_t lineno = 0;
    bool have_layers = false, have_source = false, have_sink = false;
    std::vector<std::set<int>> declared;
    std::set<std::array<int, 3>> seen;
    auto num = [&](const std::string& s) {
        long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParseError("expected an integer, got '" + s + "'", lineno);
        return static_cast<int>(v);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string s; ss >> s;)
            tok.push_back(s);
        if (tok.empty() || tok[0][0] == '#')
            continue;
        const std::string& kw = tok[0];
        if (kw == "layers") {
            if (tok.size() != 2 || have_layers)
                throw ParseError("expected a single 'layers <L>' line", lineno);
            const int L = num(tok[1]);
            if (L < 2)
                throw ParseError("a branching program needs at least 2 layers", lineno);
            have_layers = true;
            declared.assign(L + 1, {});
            continue;
        }
        if (!have_layers)
            throw ParseError("'" + kw + "' before the 'layers' line", lineno);
        const int L = static_cast<int>(declared.size()) - 1;
        if (kw == "node") {
            if (tok.size() != 3)
                throw ParseError("expected 'node <layer> <index>'", lineno);
            const int l = num(tok[1]), i = num(tok[2]);
            if (l < 1 || l > L || i < 1)
                throw ParseError("node out of range", lineno);
            if (!declared[l].insert(i).second)
                throw ParseError("node declared twice", lineno);
        } else if (kw == "arc") {
            if (tok.size() != 5)
                throw ParseError("expected 'arc <layer> <from> <to> <label>'", lineno);
            BPArc a{num(tok[1]), num(tok[2]), num(tok[3]), std::nullopt};
            if (a.layer < 1 || a.layer >= L || !declared[a.layer].count(a.from) || !declared[a.layer + 1].count(a.to))
                throw ParseError("arc between undeclared nodes or non-consecutive layers", lineno);
            if (!seen.insert({a.layer, a.from, a.to}).second)
                throw ParseError("parallel arc", lineno);
            if (tok[4] != "1") {
                try {
                    a.label = VarLabel::parse(tok[4]);
                } catch (const Error& e) {
                    throw ParseError(e.what(), lineno);
                }
                if (*a.label == kY)
                    throw ParseError("the variable y is reserved", lineno);
            }
            bp.arcs.push_back(std::move(a));
        } else if (kw == "source" || kw == "sink") {
            if (tok.size() != 2)
                throw ParseError("expected '" + kw + " <index>'", lineno);
            const int i = num(tok[1]);
            if (!declared[kw == "source" ? 1 : L].count(i))
                throw ParseError(kw + " is not a declared node of the " + (kw == "source" ? "first" : "last") +
                                     " layer",
                                 lineno);
            (kw == "source" ? bp.source : bp.sink) = i;
            (kw == "source" ? have_source : have_sink) = true;
        } else {
            throw ParseError("unknown record '" + kw + "'", lineno);
        }
    }
    if (!have_layers || !have_source || !have_sink)
        throw ParseError("missing 'layers', 'source' or 'sink'", lineno);
    for (std::size_t l = 1; l < declared.size(); ++l) {
        const int n = static_cast<int>(declared[l].size());
        if (n == 0 || *declared[l].rbegin() != n)
            throw ParseError("nodes of layer " + std::to_string(l) + " must be numbered 1..size", lineno);
        bp.layer_sizes.push_back(n);
    }
    return bp;
}

void write_bp(std::ostream& out, const LayeredBP& bp) {
    out << "layers " << bp.layers() << '\n';
    for (int l = 1; l <= bp.layers(); ++l)
        for (int i = 1; i <= bp.layer_sizes[l - 1]; ++i)
            out << "node " << l << ' ' << i << '\n';
    for (const auto& a : bp.arcs)
        out << "arc " << a.layer << ' ' << a.from << ' ' << a.to << ' ' << to_string(a.label) << '\n';
    out << "source " << bp.source << '\n' << "sink " << bp.sink << '\n';
}

// ---------------------------------------------------------------------------
// Gadget graphs

EdgeLabel GadgetGraph::label(Vertex u, Vertex v) const {
    auto it = labels.find(canonical(u, v));
    return it == labels.end() ? EdgeLabel{} : it->second;
}

GadgetGraph build_Gm(int m, const GadgetTriple& triple) {
    if (m < 1 || (m & (m - 1)) != 0)
        throw PreconditionError("m must be a power of 2, got " + std::to_string(m));
    require_certified(triple, true);
    GadgetGraph out;
    out.c_max = triple.c_max;
    out.path_convention = "c_max interior vertices (c_max + 1 edges) per connecting path";
    GadgetBuilder b(out);
    // Heap numbering: node 1 is the root, children of i are 2i and 2i + 1.
    std::vector<int> block_of(2 * m, -1);
    for (int node = 1; node < 2 * m; ++node) {
        const int level = std::bit_width(static_cast<unsigned>(node)) - 1;
        const int kind = level == 0 ? 0 : (level % 2 == 1 ? 1 : 2);
        block_of[node] = b.block(triple.I[kind].g, kind, level, node);
        if (node == 1)
            continue;
        const int parent = node / 2;
        const Block& pt = triple.I[out.blocks[block_of[parent]].kind];
        const Vertex from = out.block_vertex(block_of[parent], node % 2 == 0 ? pt.l : pt.r);
        const Vertex to = out.block_vertex(block_of[node], triple.I[kind].p);
        b.path(from, to, triple.c_max, block_of[parent], block_of[node]);
    }
    return out;
}

GadgetGraph build_Gk(int k, const GadgetTriple& pair, int c_max) {
    if (k < 1)
        throw PreconditionError("k must be at least 1");
    if (c_max < 1)
        throw PreconditionError("c_max must be at least 1");
    GadgetGraph out;
    out.c_max = c_max;
    out.path_convention = "c_max edges from each block to its designated vertex";
    GadgetBuilder b(out);
    const int b1 = b.block(pair.I[1].g, 1, 0, -1);
    const int b2 = b.block(pair.I[2].g, 2, 0, -1);
    const Vertex u = out.block_vertex(b1, pair.I[1].p);
    const Vertex v = out.block_vertex(b2, pair.I[2].p);
    const PathSegment& seg = b.path(u, v, 2 * c_max + k - 2, b1, b2);
    out.a = seg.interior[c_max - 1];
    out.b = seg.interior[c_max + k - 2];
    return out;
}

NiceTreeDecomp gadget_decomp(const GadgetGraph& g) {
    const int nb = static_cast<int>(g.blocks.size());
    if (nb == 0 || g.paths.size() + 1 != g.blocks.size())
        throw PreconditionError("gadget_decomp needs blocks joined by paths in a tree");
    TreeDecomp d;
    std::vector<int> covered(g.graph.n() + 1, 0);
    for (const auto& blk : g.blocks) {
        std::vector<Vertex> bag;
        for (int i = 1; i <= blk.size; ++i) {
            bag.push_back(blk.offset + i);
            covered[blk.offset + i] = 1;
        }
        d.bags.push_back(std::move(bag));
    }
    for (const auto& p : g.paths) {
        if (p.from_block < 0 || p.to_block < 0)
            throw PreconditionError("gadget_decomp needs every path to join two blocks");
        std::vector<Vertex> seq{p.from};
        seq.insert(seq.end(), p.interior.begin(), p.interior.end());
        seq.push_back(p.to);
        int prev = p.from_block;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            d.bags.push_back({std::min(seq[i], seq[i + 1]), std::max(seq[i], seq[i + 1])});
            covered[seq[i]] = covered[seq[i + 1]] = 1;
            const int id = static_cast<int>(d.bags.size()) - 1;
            d.edges.emplace_back(prev, id);
            prev = id;
        }
        d.edges.emplace_back(prev, p.to_block);
    }
    for (Vertex v = 1; v <= g.graph.n(); ++v)
        if (!covered[v])
            throw PreconditionError("vertex " + std::to_string(v) + " lies outside every block and path");
    return make_nice(d, g.graph);
}

Embedding embed_bp(const LayeredBP& bp, EmbedMode mode, const GadgetTriple* pair, int c_max, int h_vertices) {
    require_valid(bp);
    Embedding e;
    GadgetGraph& out = e.b;
    GadgetBuilder b(out);
    const int L = bp.layers();
    int b1 = -1;
    if (mode == EmbedMode::Gadget) {
        if (!pair)
            throw PreconditionError("gadget mode needs a certified pair");
        require_certified(*pair, false);
        if (c_max == 0)
            c_max = std::max(pair->I[1].g.n(), pair->I[2].g.n());
        out.c_max = c_max;
        out.path_convention = "c_max edges between a block and the program";
        b1 = b.block(pair->I[1].g, 1, 0, -1);
    } else if (L < 3 || L % 2 == 0) {
        throw PreconditionError("cycle mode needs an odd number of layers >= 3, got " + std::to_string(L));
    }
    const Vertex base = out.graph.n();
    for (int i = 0; i < bp.num_nodes(); ++i)
        b.vertex();
    for (const auto& a : bp.arcs) {
        const Vertex u = base + bp.vertex_of(a.layer, a.from), v = base + bp.vertex_of(a.layer + 1, a.to);
        out.graph.add_edge(u, v);
        b.label(u, v, a.label);
    }
    out.s = base + bp.vertex_of(1, bp.source);
    out.t = base + bp.vertex_of(L, bp.sink);
    if (mode == EmbedMode::Cycle) {
        out.graph.add_edge(out.s, out.t);
        b.label(out.s, out.t, kY);
    } else {
        const int b2 = b.block(pair->I[2].g, 2, 0, -1);
        b.path(out.block_vertex(b1, pair->I[1].p), out.s, c_max - 1, b1, -1);
        b.path(out.t, out.block_vertex(b2, pair->I[2].p), c_max - 1, -1, b2);
    }
    const int need = out.graph.n();
    e.h_vertices = h_vertices == 0 ? need : h_vertices;
    if (e.h_vertices < need)
        throw PreconditionError("the complete target needs at least " + std::to_string(need) + " vertices, got " +
                                std::to_string(e.h_vertices));
    for (Vertex u = 1; u <= e.h_vertices; ++u)
        for (Vertex v = u + 1; v <= e.h_vertices; ++v) {
            const VarLabel y = VarLabel::edge_y(u, v);
            if (!out.graph.has_edge(u, v))
                e.assignment[y] = ProjTarget::zero();
            else if (auto l = out.label(u, v))
                e.assignment[y] = ProjTarget::to(*l);
            else
                e.assignment[y] = ProjTarget::one();
        }
    return e;
}

IntPoly hom_polynomial(const Graph& g, const GadgetGraph& b, bool distance_pruning) {
    std::map<Monomial, BigInt> acc;
    for_each_hom(
        g, b.graph,
        [&](const HomMap& phi) {
            Monomial m;
            for (auto [u, v] : g.edges())
                if (auto l = b.label(phi[u - 1], phi[v - 1]))
                    m = monomial_product(m, monomial_of(*l));
            acc[m] += 1;
            return true;
        },
        distance_pruning);
    IntPoly r;
    for (auto& [m, c] : acc)
        r.add_term(m, c);
    return r;
}

CycleIdentityReport verify_cycle_identity(const LayeredBP& bp, const Field& field) {
    CycleIdentityReport rep;
    const int L = bp.layers();
    rep.layers = L;
    rep.factor = 2 * L;
    Embedding e = embed_bp(bp, EmbedMode::Cycle);
    const Graph cycle = Graph::cycle(L);
    rep.homs = count_homs(cycle, e.b.graph, HomOptions{100'000'000, false});
    rep.f = hom_polynomial(cycle, e.b, false);
    rep.g = bp_polynomial(bp);
    rep.paths = count_bp_paths(bp);
    rep.identity_holds = rep.f == rep.g * IntPoly::term(monomial_of(kY), rep.factor);

    if (field.p() == 2) {
        rep.char_two = true;
        rep.note = "2L has no inverse in characteristic 2";
        return rep;
    }
    IntPoly f = rep.f;
    rep.recovery_layers = L;
    if (L % static_cast<int>(field.p()) == 0) {
        // p divides 2L but not 2(L + 2): use the program padded by two layers.
        LayeredBP padded = pad_two_layers(bp);
        rep.recovery_layers = L + 2;
        f = hom_polynomial(Graph::cycle(L + 2), embed_bp(padded, EmbedMode::Cycle).b, false);
        rep.note = "characteristic divides " + std::to_string(L) + "; recovered from " + std::to_string(L + 2) +
                   " layers";
    }
    const FieldElem inv = field.from_int(2 * rep.recovery_layers).inv();
    rep.recovered = substitute(reduce_mod(f, field), kY, inv) == reduce_mod(rep.g, field);
    return rep;
}

GadgetBijectionReport verify_gadget_bijection(const LayeredBP& bp, const GadgetTriple& pair) {
    require_valid(bp);
    require_certified(pair, false);
    const int L = bp.layers();
    if (L <= bp.width())
        throw PreconditionError("the number of layers (" + std::to_string(L) + ") must exceed the width (" +
                                std::to_string(bp.width()) + ")");
    const int c_max = std::max(pair.I[1].g.n(), pair.I[2].g.n());
    GadgetGraph gk = build_Gk(L, pair, c_max);
    Embedding e = embed_bp(bp, EmbedMode::Gadget, &pair, c_max);
    const GadgetGraph& B = e.b;

    GadgetBijectionReport rep;
    rep.p1 = rep.p2 = rep.ends = true;
    std::map<Monomial, BigInt> acc;
    rep.homs = for_each_hom(
        gk.graph, B.graph,
        [&](const HomMap& phi) {
            for (int blk = 0; blk < 2; ++blk) {
                const int kind = blk + 1;
                for (Vertex i = 1; i <= pair.I[kind].g.n(); ++i)
                    if (phi[gk.block_vertex(blk, i) - 1] != B.block_vertex(blk, i))
                        (blk == 0 ? rep.p1 : rep.p2) = false;
            }
            if (phi[gk.a - 1] != B.s || phi[gk.b - 1] != B.t)
                rep.ends = false;
            Monomial m;
            for (auto [u, v] : gk.graph.edges())
                if (auto l = B.label(phi[u - 1], phi[v - 1]))
                    m = monomial_product(m, monomial_of(*l));
            acc[m] += 1;
            return true;
        },
        true);
    for (auto& [m, c] : acc)
        rep.f.add_term(m, c);
    rep.g = bp_polynomial(bp);
    rep.paths = count_bp_paths(bp);
    rep.count_matches = BigInt(rep.homs) == rep.paths;
    rep.monomials_match = rep.f == rep.g;
    return rep;
}

// ---------------------------------------------------------------------------
// Circuits in normal form and J_n

namespace {

struct NormalForm {
    std::vector<std::string> violations;
    std::vector<int> height; // product depth below each gate, -1 if unreachable
};

NormalForm analyse(const Circuit& c) {
    NormalForm nf;
    auto& bad = nf.violations;
    if (!c.has_output()) {
        bad.push_back("circuit has no output");
        return nf;
    }
    const std::size_t n = c.size();
    std::vector<char> reach(n, 0);
    reach[c.output()] = 1;
    for (std::size_t i = n; i-- > 0;)
        if (reach[i])
            for (GateId ch : c.gate(static_cast<GateId>(i)).children)
                reach[ch] = 1;
    if (c.gate(c.output()).kind != GateKind::Mul)
        bad.push_back("output gate " + std::to_string(c.output()) + " is not a product (depth must be >= 1)");
    nf.height.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (!reach[i])
            continue;
        const Gate& g = c.gate(static_cast<GateId>(i));
        const std::string name = "gate " + std::to_string(i);
        switch (g.kind) {
        case GateKind::Const:
            bad.push_back(name + " is a constant");
            break;
        case GateKind::Input:
            nf.height[i] = 0;
            break;
        case GateKind::Mul: {
            if (g.children.size() != 2) {
                bad.push_back(name + " is a product with fan-in " + std::to_string(g.children.size()) + " (need 2)");
                break;
            }
            for (GateId ch : g.children)
                if (c.gate(ch).kind != GateKind::Add)
                    bad.push_back(name + " is a product with non-sum child " + std::to_string(ch));
            const int h0 = nf.height[g.children[0]], h1 = nf.height[g.children[1]];
            if (h0 != h1)
                bad.push_back(name + " multiplies sub-circuits of different depths");
            else if (h0 >= 0)
                nf.height[i] = h0 + 1;
            break;
        }
        case GateKind::Add: {
            std::set<GateId> distinct(g.children.begin(), g.children.end());
            if (distinct.size() != g.children.size())
                bad.push_back(name + " is a sum with a repeated child");
            int h = -2;
            for (GateId ch : g.children) {
                const GateKind k = c.gate(ch).kind;
                if (k != GateKind::Mul && k != GateKind::Input) {
                    bad.push_back(name + " is a sum with child " + std::to_string(ch) + " that is not a product or input");
                    continue;
                }
                if (h == -2)
                    h = nf.height[ch];
                else if (h != nf.height[ch])
                    h = -3;
            }
            if (h == -3)
                bad.push_back(name + " sums sub-circuits of different depths");
            else if (h >= 0)
                nf.height[i] = h;
            break;
        }
        }
    }
    if (!check_mult_disjoint(c))
        bad.push_back("circuit is not multiplicatively disjoint");
    return nf;
}

} // namespace

std::vector<std::string> normal_form_violations(const Circuit& c) { return analyse(c).violations; }

JnGraph build_Jn(const Circuit& c, const GadgetTriple& triple, bool swap_levels) {
    NormalForm nf = analyse(c);
    if (!nf.violations.empty())
        throw PreconditionError("circuit is not in normal form: " + join(nf.violations));
    require_certified(triple, true);

    JnGraph out;
    out.depth = nf.height[c.output()];
    GadgetGraph& gg = out.gadget;
    gg.c_max = triple.c_max;
    gg.path_convention = "c_max interior vertices (c_max + 1 edges) per connecting path";
    GadgetBuilder b(gg);

    // J'_n: node (gate, side), side 0 = L, 1 = R. Breadth-first from root_L.
    using Node = std::pair<GateId, int>;
    std::map<Node, int> block_of;
    std::deque<Node> queue{{c.output(), 0}};
    std::vector<std::pair<Node, Node>> arcs; // parent -> child
    auto level_kind = [&](int level) {
        if (level == 0)
            return 0;
        const bool odd = level % 2 == 1;
        return odd != swap_levels ? 1 : 2;
    };
    auto open = [&](const Node& node) {
        if (block_of.count(node))
            return;
        const int level = out.depth - nf.height[node.first];
        const int kind = level_kind(level);
        block_of[node] = b.block(triple.I[kind].g, kind, level, static_cast<int>(node.first));
        queue.push_back(node);
    };
    block_of[queue.front()] = b.block(triple.I[0].g, 0, 0, static_cast<int>(c.output()));
    while (!queue.empty()) {
        Node cur = queue.front();
        queue.pop_front();
        const Gate& g = c.gate(cur.first);
        if (g.kind != GateKind::Mul)
            continue;
        for (int side = 0; side < 2; ++side)
            for (GateId opt : c.gate(g.children[side]).children) {
                Node child{opt, side};
                open(child);
                arcs.emplace_back(cur, child);
            }
    }
    out.retained_nodes = block_of.size();
    for (const auto& [parent, child] : arcs) {
        const int pb = block_of.at(parent), cb = block_of.at(child);
        const Block& pt = triple.I[gg.blocks[pb].kind];
        const Block& ct = triple.I[gg.blocks[cb].kind];
        const Vertex from = gg.block_vertex(pb, child.second == 0 ? pt.l : pt.r);
        const Vertex to = gg.block_vertex(cb, ct.p);
        const PathSegment& seg = b.path(from, to, triple.c_max, pb, cb);
        if (c.gate(child.first).kind == GateKind::Input)
            b.label(seg.interior.empty() ? from : seg.interior.back(), to, c.label_of(child.first));
    }
    return out;
}

ParseHomReport verify_parse_hom_bijection(const Circuit& c, const GadgetTriple& triple, bool swap_levels,
                                          std::size_t hom_cap) {
    JnGraph jn = build_Jn(c, triple, swap_levels);
    GadgetGraph gm = build_Gm(1 << jn.depth, triple);
    ParseHomReport rep;
    rep.depth = jn.depth;
    auto trees = enumerate_parse_trees(c, hom_cap);
    rep.parse_trees = trees.size();
    for (const auto& t : trees)
        rep.from_trees[t.monomial] += t.coefficient;
    std::size_t seen = 0;
    rep.homs = for_each_hom(
        gm.graph, jn.gadget.graph,
        [&](const HomMap& phi) {
            Monomial m;
            for (auto [u, v] : gm.graph.edges())
                if (auto l = jn.gadget.label(phi[u - 1], phi[v - 1]))
                    m = monomial_product(m, monomial_of(*l));
            rep.from_homs[m] += 1;
            return ++seen < hom_cap;
        },
        true);
    if (rep.homs >= hom_cap)
        throw BudgetExceeded("more than " + std::to_string(hom_cap) + " homomorphisms G_m -> J_n", rep.homs);
    return rep;
}

} // namespace homforge
