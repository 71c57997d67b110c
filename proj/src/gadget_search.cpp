#include "homforge/gadget_search.hpp"

#include "homforge/error.hpp"
#include "homforge/homomorphism.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace homforge {

int GadgetTriple::max_block_size() const {
    int m = 0;
    for (int i = pair_only ? 1 : 0; i < 3; ++i)
        m = std::max(m, I[i].g.n());
    return m;
}

namespace {

constexpr int kMaxBits = 16;

// Small graphs as adjacency bitmasks, vertices 0..n-1.
struct BitGraph {
    int n = 0;
    std::array<std::uint16_t, kMaxBits> adj{};

    bool edge(int u, int v) const { return (adj[u] >> v) & 1u; }
    void add(int u, int v) {
        adj[u] |= static_cast<std::uint16_t>(1u << v);
        adj[v] |= static_cast<std::uint16_t>(1u << u);
    }
};

BitGraph to_bits(const Graph& g) {
    if (g.n() > kMaxBits)
        throw Error("graph too large for the bitmask search");
    BitGraph b;
    b.n = g.n();
    for (auto [u, v] : g.edges())
        b.add(u - 1, v - 1);
    return b;
}

Graph from_bits(const BitGraph& b) {
    Graph g(b.n);
    for (int u = 0; u < b.n; ++u)
        for (int v = u + 1; v < b.n; ++v)
            if (b.edge(u, v))
                g.add_edge(u + 1, v + 1);
    return g;
}

bool bits_connected(const BitGraph& b) {
    if (b.n <= 1)
        return true;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint32_t next = 0;
        for (int u = 0; u < b.n; ++u)
            if ((frontier >> u) & 1u)
                next |= b.adj[u];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (1u << b.n) - 1;
}

bool bits_bipartite(const BitGraph& b) {
    std::array<int, kMaxBits> color;
    color.fill(-1);
    for (int s = 0; s < b.n; ++s) {
        if (color[s] >= 0)
            continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w = 0; w < b.n; ++w) {
                if (!b.edge(u, w))
                    continue;
                if (color[w] < 0) {
                    color[w] = 1 - color[u];
                    stack.push_back(w);
                } else if (color[w] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Necessary conditions for rigidity of a connected graph with >= 2 vertices:
// a degree-1 vertex folds onto its neighbour's other neighbour, and a vertex u
// whose neighbourhood lies inside that of a non-adjacent v folds onto v.
bool passes_cheap_filters(const BitGraph& b) {
    for (int u = 0; u < b.n; ++u)
        if (std::popcount(b.adj[u]) < 2)
            return false;
    for (int u = 0; u < b.n; ++u)
        for (int v = 0; v < b.n; ++v)
            if (u != v && !b.edge(u, v) && (b.adj[u] & ~b.adj[v]) == 0)
                return false;
    return bits_connected(b) && !bits_bipartite(b);
}

// Colour refinement; the returned colours are isomorphism invariant.
std::vector<int> refined_colors(const BitGraph& b) {
    std::vector<int> color(b.n);
    for (int u = 0; u < b.n; ++u)
        color[u] = std::popcount(b.adj[u]);
    for (int round = 0; round < b.n; ++round) {
        std::vector<std::pair<std::vector<int>, int>> sig(b.n);
        for (int u = 0; u < b.n; ++u) {
            std::vector<int> s{color[u]};
            std::vector<int> nb;
            for (int w = 0; w < b.n; ++w)
                if (b.edge(u, w))
                    nb.push_back(color[w]);
            std::sort(nb.begin(), nb.end());
            s.insert(s.end(), nb.begin(), nb.end());
            sig[u] = {std::move(s), u};
        }
        std::vector<std::vector<int>> keys;
        for (auto& [s, u] : sig)
            keys.push_back(s);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        std::vector<int> next(b.n);
        for (int u = 0; u < b.n; ++u)
            next[u] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[u].first) - keys.begin());
        std::vector<int> a = color, c = next;
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        color = std::move(next);
        if (c.size() == a.size())
            break;
    }
    return color;
}

std::uint64_t bits_canonical(const BitGraph& b) {
    if (b.n > 11)
        throw Error("canonical codes are limited to 11 vertices");
    if (b.n == 0)
        return 0;
    auto color = refined_colors(b);
    std::vector<int> order(b.n);
    for (int u = 0; u < b.n; ++u)
        order[u] = u;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return color[x] > color[y]; });
    std::vector<std::pair<int, int>> classes; // [begin, end)
    for (int i = 0; i < b.n;) {
        int j = i;
        while (j < b.n && color[order[j]] == color[order[i]])
            ++j;
        classes.emplace_back(i, j);
        i = j;
    }
    for (auto [s, e] : classes)
        std::sort(order.begin() + s, order.begin() + e);

    auto code_of = [&](const std::vector<int>& perm) {
        std::uint64_t code = 0;
        for (int i = 0; i < b.n; ++i)
            for (int j = i + 1; j < b.n; ++j)
                code = (code << 1) | (b.edge(perm[i], perm[j]) ? 1u : 0u);
        return code;
    };

    std::uint64_t best = 0;
    std::vector<int> perm = order;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == classes.size()) {
            best = std::max(best, code_of(perm));
            return;
        }
        auto [s, e] = classes[c];
        std::sort(perm.begin() + s, perm.begin() + e);
        do {
            rec(c + 1);
        } while (std::next_permutation(perm.begin() + s, perm.begin() + e));
    };
    rec(0);
    return best;
}

// Connected graphs on exactly n vertices, one per isomorphism class.
std::vector<BitGraph> connected_graphs(int n) {
    std::vector<BitGraph> level{BitGraph{1, {}}};
    for (int k = 2; k <= n; ++k) {
        std::vector<BitGraph> next;
        std::unordered_set<std::uint64_t> seen;
        for (const BitGraph& g : level)
            for (std::uint32_t mask = 1; mask < (1u << (k - 1)); ++mask) {
                BitGraph h = g;
                h.n = k;
                for (int v = 0; v < k - 1; ++v)
                    if ((mask >> v) & 1u)
                        h.add(v, k - 1);
                if (seen.insert(bits_canonical(h)).second)
                    next.push_back(h);
            }
        level = std::move(next);
    }
    return level;
}

bool rigid_candidate(const BitGraph& b) { return passes_cheap_filters(b) && is_rigid(from_bits(b)); }

Block marked(Graph g, bool root) {
    Block b;
    b.g = std::move(g);
    b.l = 1;
    b.r = 2;
    b.p = root ? 0 : 3;
    return b;
}

} // namespace

std::uint64_t canonical_code(const Graph& g) { return bits_canonical(to_bits(g)); }

std::vector<Graph> rigid_graphs_exhaustive(int n) {
    if (n < 1 || n > 8)
        throw PreconditionError("exhaustive generation supports 1 <= n <= 8");
    std::vector<Graph> out;
    for (const BitGraph& b : connected_graphs(n))
        if (b.n >= 2 && rigid_candidate(b))
            out.push_back(from_bits(b));
    // Single vertex is rigid but bipartite, so never a block.
    return out;
}

GadgetTriple search_gadgets(GadgetNeed need, const SearchOptions& opts, SearchStats* stats) {
    if (opts.max_n > kMaxBits)
        throw PreconditionError("max_n above " + std::to_string(kMaxBits) + " is not supported");
    const std::size_t want = need == GadgetNeed::Pair ? 2 : 3;

    std::vector<Graph> cand;
    std::vector<std::vector<char>> incomparable; // lower triangle
    std::vector<std::size_t> found;

    auto try_complete = [&]() -> bool {
        const std::size_t k = cand.size() - 1;
        incomparable.emplace_back(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            incomparable[k][i] = are_incomparable(cand[i], cand[k]) ? 1 : 0;
        if (want == 2) {
            for (std::size_t i = 0; i < k; ++i)
                if (incomparable[k][i]) {
                    found = {i, k};
                    return true;
                }
            return false;
        }
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (incomparable[k][i] && incomparable[k][j] && incomparable[j][i]) {
                    found = {i, j, k};
                    return true;
                }
        return false;
    };

    if (stats) {
        stats->graphs_examined.assign(static_cast<std::size_t>(opts.max_n) + 1, 0);
        stats->rigid_found.assign(static_cast<std::size_t>(opts.max_n) + 1, 0);
    }

    bool done = false;
    const int exhaustive_top = std::min(opts.max_n, std::min(opts.exhaustive_max_n, 8));
    for (int n = 2; n <= exhaustive_top && !done; ++n) {
        auto graphs = connected_graphs(n);
        if (stats)
            stats->graphs_examined[n] = graphs.size();
        for (const BitGraph& b : graphs) {
            if (!rigid_candidate(b))
                continue;
            if (stats)
                ++stats->rigid_found[n];
            cand.push_back(from_bits(b));
            if (try_complete()) {
                done = true;
                break;
            }
        }
    }

    std::mt19937_64 rng(opts.seed);
    for (int n = exhaustive_top + 1; n <= opts.max_n && !done; ++n) {
        std::unordered_set<std::uint64_t> seen;
        for (std::size_t s = 0; s < opts.samples_per_n && !done; ++s) {
            // Edge density drawn from [0.3, 0.6).
            const std::uint64_t threshold = (rng() % 300) + 300;
            BitGraph b;
            b.n = n;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng() % 1000 < threshold)
                        b.add(u, v);
            if (stats)
                ++stats->graphs_examined[n];
            if (!rigid_candidate(b))
                continue;
            if (n <= 11 && !seen.insert(bits_canonical(b)).second)
                continue;
            if (stats)
                ++stats->rigid_found[n];
            cand.push_back(from_bits(b));
            done = try_complete();
        }
    }
    if (!done)
        throw Error("no " + std::string(want == 2 ? "pair" : "triple") +
                    " of rigid, connected, non-bipartite, pairwise incomparable graphs with at most " +
                    std::to_string(opts.max_n) + " vertices was found");

    GadgetTriple t;
    t.pair_only = want == 2;
    if (want == 2) {
        t.I[1] = marked(cand[found[0]], false);
        t.I[2] = marked(cand[found[1]], false);
    } else {
        t.I[0] = marked(cand[found[0]], true);
        t.I[1] = marked(cand[found[1]], false);
        t.I[2] = marked(cand[found[2]], false);
    }
    t.c_max = t.max_block_size() + 1;
    auto problems = certify(t);
    if (!problems.empty())
        throw Error("search result failed certification: " + problems.front());
    return t;
}

std::vector<std::string> certify(const GadgetTriple& t) {
    std::vector<std::string> bad;
    const int first = t.pair_only ? 1 : 0;
    for (int i = first; i < 3; ++i) {
        const Block& b = t.I[i];
        const std::string name = "I" + std::to_string(i);
        if (b.g.n() < 1) {
            bad.push_back(name + " is empty");
            continue;
        }
        if (!is_connected(b.g))
            bad.push_back(name + " is not connected");
        if (is_bipartite(b.g))
            bad.push_back(name + " is bipartite");
        std::size_t self = 0;
        for_each_hom(b.g, b.g, [&](const HomMap&) { return ++self < 2; });
        if (self != 1)
            bad.push_back(name + " is not rigid");
        std::vector<Vertex> marks{b.l, b.r};
        if (i > 0)
            marks.push_back(b.p);
        for (Vertex v : marks)
            if (v < 1 || v > b.g.n())
                bad.push_back(name + " has a marked vertex out of range");
        std::sort(marks.begin(), marks.end());
        if (std::adjacent_find(marks.begin(), marks.end()) != marks.end())
            bad.push_back(name + " has repeated marked vertices");
    }
    for (int i = first; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (has_hom(t.I[i].g, t.I[j].g))
                bad.push_back("I" + std::to_string(i) + " maps to I" + std::to_string(j));
            if (has_hom(t.I[j].g, t.I[i].g))
                bad.push_back("I" + std::to_string(j) + " maps to I" + std::to_string(i));
        }
    if (t.pair_only ? t.c_max < t.max_block_size() : t.c_max <= t.max_block_size())
        bad.push_back("c_max " + std::to_string(t.c_max) + " is too small");
    return bad;
}

GadgetTriple read_gadget(std::istream& in) {
    GadgetTriple t;
    std::string line;
    std::size_t lineno = 0;
    int current = -1;
    bool have_kind = false;
    std::array<bool, 3> have_block{};
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
        try {
            if (tok[0] == "kind" && tok.size() == 2) {
                if (tok[1] != "pair" && tok[1] != "triple")
                    throw ParseError("kind must be pair or triple", lineno);
                t.pair_only = tok[1] == "pair";
                have_kind = true;
            } else if (tok[0] == "cmax" && tok.size() == 2) {
                t.c_max = num(tok[1]);
            } else if (tok[0] == "block" && tok.size() == 3) {
                current = num(tok[1]);
                if (current < 0 || current > 2)
                    throw ParseError("block index must be 0, 1 or 2", lineno);
                t.I[current].g = Graph(num(tok[2]));
                have_block[current] = true;
            } else if (tok[0] == "e" && tok.size() == 3) {
                if (current < 0)
                    throw ParseError("edge before any block", lineno);
                t.I[current].g.add_edge(num(tok[1]), num(tok[2]));
            } else if (tok[0] == "mark" && (tok.size() == 4 || tok.size() == 5)) {
                int i = num(tok[1]);
                if (i < 0 || i > 2)
                    throw ParseError("block index must be 0, 1 or 2", lineno);
                t.I[i].l = num(tok[2]);
                t.I[i].r = num(tok[3]);
                t.I[i].p = tok.size() == 5 ? num(tok[4]) : 0;
            } else {
                throw ParseError("unrecognised record '" + tok[0] + "'", lineno);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    if (!have_kind)
        throw ParseError("missing 'kind' record", lineno);
    for (int i = t.pair_only ? 1 : 0; i < 3; ++i)
        if (!have_block[i])
            throw ParseError("missing block " + std::to_string(i), lineno);
    return t;
}

void write_gadget(std::ostream& out, const GadgetTriple& t) {
    out << "kind " << (t.pair_only ? "pair" : "triple") << '\n';
    out << "cmax " << t.c_max << '\n';
    for (int i = t.pair_only ? 1 : 0; i < 3; ++i) {
        const Block& b = t.I[i];
        out << "block " << i << ' ' << b.g.n() << '\n';
        for (auto [u, v] : b.g.edges())
            out << "e " << u << ' ' << v << '\n';
        out << "mark " << i << ' ' << b.l << ' ' << b.r;
        if (i > 0)
            out << ' ' << b.p;
        out << '\n';
    }
}

} // namespace homforge
