#include "support.hpp"

#include "homforge/tree_decomp.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace homforge;
using namespace hf_test;

namespace {

NiceTreeDecomp single_edge_decomp() {
    NiceTreeDecomp d;
    int leaf = d.add({NodeKind::Leaf, {1}, 1, {}});
    int intro = d.add({NodeKind::Introduce, {1, 2}, 2, {leaf}});
    int f1 = d.add({NodeKind::Forget, {2}, 1, {intro}});
    d.root = d.add({NodeKind::Forget, {}, 2, {f1}});
    return d;
}

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_SUITE("tree-decomp") {

TEST_CASE("validate_nice") {
    Graph edge(2);
    edge.add_edge(1, 2);
    CHECK(validate_nice(single_edge_decomp(), edge).empty());
    CHECK(width(single_edge_decomp()) == 1);

    // Same shape, but vertices 1 and 2 never share a bag.
    NiceTreeDecomp apart;
    int l1 = apart.add({NodeKind::Leaf, {1}, 1, {}});
    int f1 = apart.add({NodeKind::Forget, {}, 1, {l1}});
    int i2 = apart.add({NodeKind::Introduce, {2}, 2, {f1}});
    apart.root = apart.add({NodeKind::Forget, {}, 2, {i2}});
    auto bad = validate_nice(apart, edge);
    CHECK(mentions(bad, "edge (1,2) in no bag"));

    Graph two(2);
    NiceTreeDecomp join;
    int a = join.add({NodeKind::Leaf, {1}, 1, {}});
    int b = join.add({NodeKind::Leaf, {2}, 2, {}});
    int j = join.add({NodeKind::Join, {1}, 0, {a, b}});
    join.root = join.add({NodeKind::Forget, {}, 1, {j}});
    CHECK_FALSE(validate_nice(join, two).empty());

    NiceTreeDecomp nonempty_root = single_edge_decomp();
    nonempty_root.nodes.pop_back();
    nonempty_root.root = 2;
    CHECK(mentions(validate_nice(nonempty_root, edge), "root bag"));
    NiceTreeDecomp orphan = single_edge_decomp();
    orphan.add({NodeKind::Leaf, {1}, 1, {}});
    CHECK(mentions(validate_nice(orphan, edge), "not reachable"));
}

TEST_CASE("width") {
    Graph one(1);
    NiceTreeDecomp d;
    int leaf = d.add({NodeKind::Leaf, {1}, 1, {}});
    d.root = d.add({NodeKind::Forget, {}, 1, {leaf}});
    CHECK(validate_nice(d, one).empty());
    CHECK(width(d) == 0);
    CHECK(treewidth_exact(Graph::complete(4)).width == 3);
    CHECK(width(treewidth_exact(Graph::complete(4)).decomp) == 3);
}

TEST_CASE("make_nice") {
    Graph p3 = Graph::path(3);
    TreeDecomp path{{{1, 2}, {2, 3}}, {{0, 1}}};
    CHECK(validate_tree_decomp(path, p3).empty());
    NiceTreeDecomp n = make_nice(path, p3);
    CHECK(validate_nice(n, p3).empty());
    CHECK(width(n) == 1);
    CHECK_FALSE(has_join(n));

    Graph star(4);
    for (int leaf = 2; leaf <= 4; ++leaf)
        star.add_edge(1, leaf);
    TreeDecomp sd{{{1, 2}, {1, 3}, {1, 4}}, {{0, 1}, {0, 2}}};
    NiceTreeDecomp sn = make_nice(sd, star);
    CHECK(validate_nice(sn, star).empty());
    CHECK(width(sn) == 1);

    TreeDecomp broken{{{1}, {2, 3}}, {{0, 1}}};
    CHECK_THROWS_AS(make_nice(broken, p3), Error);
}

TEST_CASE("make_nice preserves width on random greedy decompositions") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 100; ++trial) {
        Graph g = random_graph(1 + static_cast<int>(rng() % 9), 0.4, rng);
        TreeDecomp td = greedy_decomposition(g);
        REQUIRE(validate_tree_decomp(td, g).empty());
        NiceTreeDecomp n = make_nice(td, g);
        CHECK(validate_nice(n, g).empty());
        CHECK(width(n) == width(td));
        CHECK(treewidth_exact(g).width <= width(n));
    }
}

TEST_CASE("exact treewidth") {
    CHECK(treewidth_exact(Graph::path(5)).width == 1);
    Graph tree(6);
    for (auto [u, v] : std::vector<Edge>{{1, 2}, {1, 3}, {3, 4}, {3, 5}, {5, 6}})
        tree.add_edge(u, v);
    CHECK(treewidth_exact(tree).width == 1);
    CHECK(treewidth_exact(Graph::cycle(5)).width == 2);
    CHECK(treewidth_exact(Graph::complete(6)).width == 5);
    // Grid 3x3 has treewidth 3.
    Graph grid(9);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            int v = 3 * r + c + 1;
            if (c < 2)
                grid.add_edge(v, v + 1);
            if (r < 2)
                grid.add_edge(v, v + 3);
        }
    auto res = treewidth_exact(grid);
    CHECK(res.width == 3);
    CHECK(validate_nice(res.decomp, grid).empty());
    CHECK_THROWS_AS(treewidth_exact(Graph(13)), Error);
}

TEST_CASE("exact treewidth is never beaten by an elimination ordering") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        Graph g = random_graph(n, 0.45, rng);
        auto exact = treewidth_exact(g);
        CHECK(validate_nice(exact.decomp, g).empty());
        CHECK(width(exact.decomp) == exact.width);
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), 1);
        for (int k = 0; k < 5; ++k) {
            std::shuffle(order.begin(), order.end(), rng);
            CHECK(exact.width <= width(decomposition_from_ordering(g, order)));
        }
    }
}

TEST_CASE("cycle decompositions") {
    for (int n : {3, 5, 7, 10}) {
        NiceTreeDecomp d = cycle_decomp(n);
        CHECK(validate_nice(d, Graph::cycle(n)).empty());
        CHECK(width(d) == 2);
        CHECK_FALSE(has_join(d));
    }
}

TEST_CASE("text format round trip") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_graph(2 + static_cast<int>(rng() % 7), 0.5, rng);
        NiceTreeDecomp d = treewidth_exact(g).decomp;
        std::stringstream s;
        write_decomp(s, d);
        CHECK(read_decomp(s) == d);
    }
    std::istringstream bad("bag 0 intro:x 1\nroot 0\n");
    CHECK_THROWS_AS(read_decomp(bad), ParseError);
}

} // TEST_SUITE
