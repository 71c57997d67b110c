#include "homforge/tree_decomp.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace homforge {

int NiceTreeDecomp::add(DecompNode node) {
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size() - 1);
}

namespace {

std::string bag_str(const std::vector<Vertex>& bag) {
    std::string s = "{";
    for (std::size_t i = 0; i < bag.size(); ++i)
        s += (i ? "," : "") + std::to_string(bag[i]);
    return s + "}";
}

bool sorted_unique(const std::vector<Vertex>& bag) {
    return std::adjacent_find(bag.begin(), bag.end(), std::greater_equal<>{}) == bag.end();
}

std::vector<Vertex> with(std::vector<Vertex> bag, Vertex v) {
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
    return bag;
}

std::vector<Vertex> without(std::vector<Vertex> bag, Vertex v) {
    bag.erase(std::remove(bag.begin(), bag.end(), v), bag.end());
    return bag;
}

bool contains(const std::vector<Vertex>& bag, Vertex v) { return std::binary_search(bag.begin(), bag.end(), v); }

// Coverage and running-intersection checks shared by both validators.
// `parent[i]` is -1 for the root.
void check_cover(const std::vector<const std::vector<Vertex>*>& bags, const std::vector<int>& parent, const Graph& g,
                 std::vector<std::string>& out) {
    const std::size_t n = bags.size();
    for (std::size_t i = 0; i < n; ++i)
        for (Vertex v : *bags[i])
            if (v < 1 || v > g.n())
                out.push_back("bag " + std::to_string(i) + " contains unknown vertex " + std::to_string(v));
    for (Vertex v = 1; v <= g.n(); ++v) {
        int tops = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (contains(*bags[i], v) && (parent[i] < 0 || !contains(*bags[parent[i]], v)))
                ++tops;
        if (tops == 0)
            out.push_back("vertex " + std::to_string(v) + " in no bag");
        else if (tops > 1)
            out.push_back("bags containing vertex " + std::to_string(v) + " are not connected");
    }
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (std::size_t i = 0; i < n && !covered; ++i)
            covered = contains(*bags[i], u) && contains(*bags[i], v);
        if (!covered)
            out.push_back("edge (" + std::to_string(u) + "," + std::to_string(v) + ") in no bag");
    }
}

} // namespace

std::vector<std::string> validate_nice(const NiceTreeDecomp& d, const Graph& g) {
    std::vector<std::string> out;
    const int n = static_cast<int>(d.nodes.size());
    if (n == 0) {
        out.push_back("decomposition has no nodes");
        return out;
    }
    if (d.root < 0 || d.root >= n) {
        out.push_back("root " + std::to_string(d.root) + " is not a node");
        return out;
    }
    std::vector<int> parent(n, -2);
    parent[d.root] = -1;
    for (int i = 0; i < n; ++i)
        for (int c : d.nodes[i].children) {
            if (c < 0 || c >= n) {
                out.push_back("node " + std::to_string(i) + " has unknown child " + std::to_string(c));
                continue;
            }
            if (c == d.root || parent[c] != -2)
                out.push_back("node " + std::to_string(c) + " has more than one parent");
            else
                parent[c] = i;
        }
    if (!out.empty())
        return out;
    // Reachability from the root also rules out cycles, given unique parents.
    std::vector<bool> seen(n, false);
    std::vector<int> stack{d.root};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        seen[t] = true;
        for (int c : d.nodes[t].children)
            stack.push_back(c);
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i])
            out.push_back("node " + std::to_string(i) + " is not reachable from the root");
    if (!out.empty())
        return out;

    if (!d.nodes[d.root].bag.empty())
        out.push_back("root bag " + bag_str(d.nodes[d.root].bag) + " is not empty");
    for (int i = 0; i < n; ++i) {
        const DecompNode& t = d.nodes[i];
        const std::string id = "node " + std::to_string(i);
        if (!sorted_unique(t.bag)) {
            out.push_back(id + " bag is not sorted and duplicate-free");
            continue;
        }
        switch (t.kind) {
        case NodeKind::Leaf:
            if (!t.children.empty())
                out.push_back(id + " is a leaf with children");
            if (t.bag.size() != 1)
                out.push_back(id + " leaf bag " + bag_str(t.bag) + " is not a singleton");
            break;
        case NodeKind::Introduce:
        case NodeKind::Forget: {
            const bool intro = t.kind == NodeKind::Introduce;
            const std::string what = intro ? " introduce " : " forget ";
            if (t.children.size() != 1) {
                out.push_back(id + what + "node needs exactly one child");
                break;
            }
            const auto& child = d.nodes[t.children[0]].bag;
            if (intro ? (contains(child, t.v) || t.bag != with(child, t.v))
                      : (!contains(child, t.v) || t.bag != without(child, t.v)))
                out.push_back(id + what + std::to_string(t.v) + ": bag " + bag_str(t.bag) +
                              " does not match child bag " + bag_str(child));
            break;
        }
        case NodeKind::Join:
            if (t.children.size() != 2) {
                out.push_back(id + " join node needs exactly two children");
                break;
            }
            if (d.nodes[t.children[0]].bag != t.bag || d.nodes[t.children[1]].bag != t.bag)
                out.push_back(id + " join node has unequal child bags");
            break;
        }
    }
    std::vector<const std::vector<Vertex>*> bags;
    for (const auto& t : d.nodes)
        bags.push_back(&t.bag);
    check_cover(bags, parent, g, out);
    return out;
}

std::vector<std::string> validate_tree_decomp(const TreeDecomp& d, const Graph& g) {
    std::vector<std::string> out;
    const int n = static_cast<int>(d.bags.size());
    if (n == 0) {
        out.push_back("decomposition has no bags");
        return out;
    }
    for (int i = 0; i < n; ++i)
        if (!sorted_unique(d.bags[i]))
            out.push_back("bag " + std::to_string(i) + " is not sorted and duplicate-free");
    if (static_cast<int>(d.edges.size()) != n - 1)
        out.push_back("a tree on " + std::to_string(n) + " bags needs " + std::to_string(n - 1) + " edges");
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : d.edges) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
            out.push_back("bad tree edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
            continue;
        }
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    if (!out.empty())
        return out;
    std::vector<int> parent(n, -2);
    parent[0] = -1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int c : adj[t])
            if (parent[c] == -2) {
                parent[c] = t;
                stack.push_back(c);
            }
    }
    for (int i = 0; i < n; ++i)
        if (parent[i] == -2) {
            out.push_back("bag tree is not connected");
            return out;
        }
    std::vector<const std::vector<Vertex>*> bags;
    for (const auto& b : d.bags)
        bags.push_back(&b);
    check_cover(bags, parent, g, out);
    return out;
}

int width(const NiceTreeDecomp& d) {
    std::size_t m = 0;
    for (const auto& t : d.nodes)
        m = std::max(m, t.bag.size());
    return static_cast<int>(m) - 1;
}

int width(const TreeDecomp& d) {
    std::size_t m = 0;
    for (const auto& b : d.bags)
        m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
}

bool has_join(const NiceTreeDecomp& d) {
    return std::any_of(d.nodes.begin(), d.nodes.end(), [](const DecompNode& t) { return t.kind == NodeKind::Join; });
}

NiceTreeDecomp make_nice(const TreeDecomp& in, const Graph& g) {
    auto problems = validate_tree_decomp(in, g);
    if (!problems.empty())
        throw Error("invalid tree decomposition: " + problems.front());
    const int n = static_cast<int>(in.bags.size());
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : in.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());

    NiceTreeDecomp d;
    // Forget from \ to, then introduce to \ from, on top of node r.
    auto transition = [&](int r, const std::vector<Vertex>& from, const std::vector<Vertex>& to) {
        std::vector<Vertex> bag = from;
        for (Vertex v : from)
            if (!contains(to, v)) {
                bag = without(bag, v);
                r = d.add({NodeKind::Forget, bag, v, {r}});
            }
        for (Vertex v : to)
            if (!contains(from, v)) {
                bag = with(bag, v);
                r = d.add({NodeKind::Introduce, bag, v, {r}});
            }
        return r;
    };

    // Iterative post-order to stay safe on long path decompositions.
    std::vector<int> parent(n, -2), order;
    parent[0] = -1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        order.push_back(t);
        for (int c : adj[t])
            if (parent[c] == -2) {
                parent[c] = t;
                stack.push_back(c);
            }
    }
    std::vector<int> built(n, -1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int t = *it;
        const auto& bag = in.bags[t];
        std::vector<int> parts;
        for (int c : adj[t])
            if (c != parent[t] && built[c] >= 0)
                parts.push_back(transition(built[c], in.bags[c], bag));
        if (parts.empty()) {
            if (bag.empty())
                continue;
            int leaf = d.add({NodeKind::Leaf, {bag[0]}, 0, {}});
            built[t] = transition(leaf, {bag[0]}, bag);
            continue;
        }
        int acc = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i)
            acc = d.add({NodeKind::Join, bag, 0, {acc, parts[i]}});
        built[t] = acc;
    }
    if (built[0] < 0)
        throw Error("decomposition has no vertices");
    d.root = transition(built[0], in.bags[0], {});
    return d;
}

TreeDecomp decomposition_from_ordering(const Graph& g, const std::vector<Vertex>& order) {
    const int n = g.n();
    if (static_cast<int>(order.size()) != n)
        throw Error("elimination ordering must list every vertex once");
    std::vector<int> pos(static_cast<std::size_t>(n) + 1, -1);
    for (int i = 0; i < n; ++i) {
        Vertex v = order[i];
        if (v < 1 || v > n || pos[v] >= 0)
            throw Error("elimination ordering must list every vertex once");
        pos[v] = i;
    }
    std::vector<std::set<Vertex>> nb(static_cast<std::size_t>(n) + 1);
    for (auto [u, v] : g.edges()) {
        nb[u].insert(v);
        nb[v].insert(u);
    }
    // Bag of the i-th eliminated vertex goes to index n-1-i so the last one is the root.
    TreeDecomp d;
    d.bags.resize(n);
    auto slot = [&](int i) { return n - 1 - i; };
    for (int i = 0; i < n; ++i) {
        Vertex v = order[i];
        std::vector<Vertex> later(nb[v].begin(), nb[v].end());
        for (Vertex a : later) {
            nb[a].erase(v);
            for (Vertex b : later)
                if (a != b)
                    nb[a].insert(b);
        }
        std::vector<Vertex> bag = with(later, v);
        d.bags[slot(i)] = bag;
        if (later.empty()) {
            if (i != n - 1)
                d.edges.emplace_back(slot(i), 0);
        } else {
            Vertex next = *std::min_element(later.begin(), later.end(), [&](Vertex a, Vertex b) { return pos[a] < pos[b]; });
            d.edges.emplace_back(slot(i), slot(pos[next]));
        }
    }
    return d;
}

TreeDecomp greedy_decomposition(const Graph& g) {
    const int n = g.n();
    std::vector<std::set<Vertex>> nb(static_cast<std::size_t>(n) + 1);
    for (auto [u, v] : g.edges()) {
        nb[u].insert(v);
        nb[v].insert(u);
    }
    std::vector<bool> gone(static_cast<std::size_t>(n) + 1, false);
    std::vector<Vertex> order;
    for (int step = 0; step < n; ++step) {
        Vertex best = 0;
        for (Vertex v = 1; v <= n; ++v)
            if (!gone[v] && (best == 0 || nb[v].size() < nb[best].size()))
                best = v;
        gone[best] = true;
        order.push_back(best);
        std::vector<Vertex> later(nb[best].begin(), nb[best].end());
        for (Vertex a : later) {
            nb[a].erase(best);
            for (Vertex b : later)
                if (a != b)
                    nb[a].insert(b);
        }
    }
    return decomposition_from_ordering(g, order);
}

ExactTreewidth treewidth_exact(const Graph& g) {
    const int n = g.n();
    if (n < 1)
        throw PreconditionError("treewidth_exact needs at least one vertex");
    if (n > 12)
        throw PreconditionError("treewidth_exact is limited to 12 vertices; use a structural decomposition");
    std::vector<std::uint32_t> adj(n, 0);
    for (auto [u, v] : g.edges()) {
        adj[u - 1] |= 1u << (v - 1);
        adj[v - 1] |= 1u << (u - 1);
    }
    // Vertices outside S + v reachable from v through S.
    auto q = [&](std::uint32_t s, int v) {
        std::uint32_t visited = 1u << v, frontier = visited, result = 0;
        while (frontier) {
            std::uint32_t reach = 0;
            for (int x = 0; x < n; ++x)
                if ((frontier >> x) & 1u)
                    reach |= adj[x];
            result |= reach & ~s & ~(1u << v);
            frontier = reach & s & ~visited;
            visited |= frontier;
        }
        return std::popcount(result);
    };
    const std::uint32_t full = (1u << n) - 1;
    std::vector<int> tw(full + 1, 0);
    std::vector<std::int8_t> last(full + 1, -1);
    tw[0] = -1;
    for (std::uint32_t s = 1; s <= full; ++s) {
        int best = n + 1;
        for (int v = 0; v < n; ++v) {
            if (!((s >> v) & 1u))
                continue;
            const std::uint32_t rest = s & ~(1u << v);
            int val = std::max(tw[rest], q(rest, v));
            if (val < best) {
                best = val;
                last[s] = static_cast<std::int8_t>(v);
            }
        }
        tw[s] = best;
    }
    ExactTreewidth r;
    r.width = std::max(tw[full], 0);
    std::vector<Vertex> rev;
    for (std::uint32_t s = full; s; s &= ~(1u << last[s]))
        rev.push_back(last[s] + 1);
    r.ordering.assign(rev.rbegin(), rev.rend());
    r.decomp = make_nice(decomposition_from_ordering(g, r.ordering), g);
    return r;
}

NiceTreeDecomp cycle_decomp(int n) {
    if (n < 3)
        throw Error("a cycle needs at least 3 vertices");
    TreeDecomp d;
    for (int i = 2; i < n; ++i) {
        d.bags.push_back({1, i, i + 1});
        if (i > 2)
            d.edges.emplace_back(i - 3, i - 2);
    }
    return make_nice(d, Graph::cycle(n));
}

NiceTreeDecomp read_decomp(std::istream& in) {
    std::map<int, DecompNode> nodes;
    std::vector<std::pair<int, int>> child_links;
    int root = -1;
    bool have_root = false;
    std::string line;
    std::size_t lineno = 0;
    auto num = [&](std::string_view s) {
        long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParseError("expected an integer, got '" + std::string(s) + "'", lineno);
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
        if (tok[0] == "bag" && tok.size() >= 3) {
            int id = num(tok[1]);
            if (id < 0 || nodes.count(id))
                throw ParseError("bag id " + tok[1] + " is negative or repeated", lineno);
            DecompNode t;
            const std::string& kind = tok[2];
            if (kind == "leaf") {
                t.kind = NodeKind::Leaf;
            } else if (kind == "join") {
                t.kind = NodeKind::Join;
            } else if (kind.rfind("intro:", 0) == 0) {
                t.kind = NodeKind::Introduce;
                t.v = num(std::string_view(kind).substr(6));
            } else if (kind.rfind("forget:", 0) == 0) {
                t.kind = NodeKind::Forget;
                t.v = num(std::string_view(kind).substr(7));
            } else {
                throw ParseError("unknown node kind '" + kind + "'", lineno);
            }
            for (std::size_t i = 3; i < tok.size(); ++i)
                t.bag.push_back(num(tok[i]));
            std::sort(t.bag.begin(), t.bag.end());
            nodes.emplace(id, std::move(t));
        } else if (tok[0] == "child" && tok.size() == 3) {
            child_links.emplace_back(num(tok[1]), num(tok[2]));
        } else if (tok[0] == "root" && tok.size() == 2) {
            root = num(tok[1]);
            have_root = true;
        } else {
            throw ParseError("expected 'bag', 'child' or 'root' record", lineno);
        }
    }
    if (!have_root)
        throw ParseError("missing 'root' record", lineno);
    NiceTreeDecomp d;
    for (auto& [id, t] : nodes) {
        if (id != static_cast<int>(d.nodes.size()))
            throw ParseError("bag ids must be 0.." + std::to_string(nodes.size() - 1), lineno);
        d.nodes.push_back(std::move(t));
    }
    for (auto [p, c] : child_links) {
        if (p < 0 || c < 0 || p >= static_cast<int>(d.nodes.size()) || c >= static_cast<int>(d.nodes.size()))
            throw ParseError("child record references unknown bag", lineno);
        d.nodes[p].children.push_back(c);
    }
    d.root = root;
    return d;
}

void write_decomp(std::ostream& out, const NiceTreeDecomp& d) {
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        const DecompNode& t = d.nodes[i];
        out << "bag " << i << ' ';
        switch (t.kind) {
        case NodeKind::Leaf:
            out << "leaf";
            break;
        case NodeKind::Introduce:
            out << "intro:" << t.v;
            break;
        case NodeKind::Forget:
            out << "forget:" << t.v;
            break;
        case NodeKind::Join:
            out << "join";
            break;
        }
        for (Vertex v : t.bag)
            out << ' ' << v;
        out << '\n';
    }
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
        for (int c : d.nodes[i].children)
            out << "child " << i << ' ' << c << '\n';
    out << "root " << d.root << '\n';
}

} // namespace homforge
