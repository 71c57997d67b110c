#include "homforge/homomorphism.hpp"

#include "homforge/error.hpp"

#include <algorithm>
#include <limits>

namespace homforge {

namespace {

struct Step {
    Vertex u;
    std::vector<Vertex> earlier_nbrs;                   // already-placed neighbours
    std::vector<std::pair<Vertex, int>> earlier_dists;  // (placed vertex, dist in G), pruning only
};

// Highest-degree vertex first, then repeatedly the vertex with most placed
// neighbours (ties: degree, then lowest id). With `dense_first`, vertices of
// degree >= 3 all come before the rest: in gadget graphs this places the
// rigid blocks before the long paths between them, so distance pruning pins
// the paths down from both ends.
std::vector<Vertex> search_order(const Graph& g, bool dense_first) {
    std::vector<Vertex> order;
    std::vector<int> placed_nbrs(static_cast<std::size_t>(g.n()) + 1, 0);
    std::vector<bool> used(static_cast<std::size_t>(g.n()) + 1, false);
    for (int step = 0; step < g.n(); ++step) {
        Vertex best = 0;
        for (Vertex v = 1; v <= g.n(); ++v) {
            if (used[v])
                continue;
            if (dense_first && best != 0 && (g.degree(v) >= 3) != (g.degree(best) >= 3)) {
                if (g.degree(v) >= 3)
                    best = v;
                continue;
            }
            if (best == 0 || placed_nbrs[v] > placed_nbrs[best] ||
                (placed_nbrs[v] == placed_nbrs[best] && g.degree(v) > g.degree(best)))
                best = v;
        }
        used[best] = true;
        order.push_back(best);
        for (Vertex w : g.neighbors(best))
            ++placed_nbrs[w];
    }
    return order;
}

} // namespace

std::size_t for_each_hom(const Graph& g, const Graph& h, const std::function<bool(const HomMap&)>& visit,
                         bool distance_pruning) {
    const int n = g.n();
    if (n == 0) {
        visit(HomMap{});
        return 1;
    }
    if (h.n() == 0)
        return 0;

    auto order = search_order(g, distance_pruning);
    std::vector<int> pos(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i)
        pos[order[i]] = i;

    std::vector<std::vector<int>> gdist, hdist;
    if (distance_pruning) {
        gdist = distances(g);
        hdist = distances(h);
    }
    std::vector<Step> steps(n);
    for (int i = 0; i < n; ++i) {
        Step& s = steps[i];
        s.u = order[i];
        for (Vertex w : g.neighbors(s.u))
            if (pos[w] < i)
                s.earlier_nbrs.push_back(w);
        if (distance_pruning)
            for (int j = 0; j < i; ++j) {
                int d = gdist[s.u][order[j]];
                if (d > 1)
                    s.earlier_dists.emplace_back(order[j], d);
            }
    }

    std::vector<Vertex> all_targets(h.n());
    for (int v = 1; v <= h.n(); ++v)
        all_targets[v - 1] = v;

    HomMap map(n, 0);
    std::size_t count = 0;
    bool stop = false;

    auto fits = [&](const Step& s, Vertex x) {
        for (Vertex w : s.earlier_nbrs)
            if (!h.has_edge(map[w - 1], x))
                return false;
        for (auto [w, d] : s.earlier_dists) {
            int dh = hdist[map[w - 1]][x];
            if (dh < 0 || dh > d)
                return false;
        }
        return true;
    };

    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            ++count;
            if (!visit(map))
                stop = true;
            return;
        }
        const Step& s = steps[i];
        const std::vector<Vertex>& candidates =
            s.earlier_nbrs.empty() ? all_targets : h.neighbors(map[s.earlier_nbrs.front() - 1]);
        for (Vertex x : candidates) {
            if (!fits(s, x))
                continue;
            map[s.u - 1] = x;
            rec(i + 1);
            if (stop)
                return;
        }
        map[s.u - 1] = 0;
    };
    rec(0);
    return count;
}

std::vector<HomMap> enumerate_homs(const Graph& g, const Graph& h, const HomOptions& opts) {
    std::vector<HomMap> out;
    bool over = false;
    for_each_hom(
        g, h,
        [&](const HomMap& m) {
            if (out.size() >= opts.cap) {
                over = true;
                return false;
            }
            out.push_back(m);
            return true;
        },
        opts.distance_pruning);
    if (over)
        throw BudgetExceeded("homomorphism enumeration exceeded the cap of " + std::to_string(opts.cap), out.size());
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t count_homs(const Graph& g, const Graph& h, const HomOptions& opts) {
    std::size_t count = 0;
    bool over = false;
    for_each_hom(
        g, h,
        [&](const HomMap&) {
            if (count >= opts.cap) {
                over = true;
                return false;
            }
            ++count;
            return true;
        },
        opts.distance_pruning);
    if (over)
        throw BudgetExceeded("homomorphism count exceeded the cap of " + std::to_string(opts.cap), count);
    return count;
}

bool has_hom(const Graph& g, const Graph& h, bool distance_pruning) {
    return for_each_hom(g, h, [](const HomMap&) { return false; }, distance_pruning) > 0;
}

bool is_homomorphism(const Graph& g, const Graph& h, const HomMap& map) {
    if (map.size() != static_cast<std::size_t>(g.n()))
        return false;
    for (Vertex x : map)
        if (x < 1 || x > h.n())
            return false;
    for (auto [u, v] : g.edges())
        if (!h.has_edge(map[u - 1], map[v - 1]))
            return false;
    return true;
}

HomMap compose(const HomMap& phi, const HomMap& psi) {
    HomMap r(phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
        r[i] = psi.at(phi[i] - 1);
    return r;
}

bool is_rigid(const Graph& g) {
    std::size_t seen = 0;
    for_each_hom(g, g, [&](const HomMap&) { return ++seen < 2; });
    return seen == 1;
}

bool are_incomparable(const Graph& a, const Graph& b) { return !has_hom(a, b) && !has_hom(b, a); }

} // namespace homforge
