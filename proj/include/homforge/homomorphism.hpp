#pragma once

#include "homforge/graph.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace homforge {

/// map[u-1] is the image of vertex u.
using HomMap = std::vector<Vertex>;

struct HomOptions {
    std::size_t cap = 1'000'000;
    /// Reject partial maps that would stretch a G-distance in H. Needs an
    /// all-pairs distance table of H, so it pays off on large sparse targets.
    bool distance_pruning = false;
};

/// Runs the backtracking search and calls `visit` for each homomorphism in
/// search order. Stops early when `visit` returns false. Returns the number
/// of homomorphisms visited.
std::size_t for_each_hom(const Graph& g, const Graph& h, const std::function<bool(const HomMap&)>& visit,
                         bool distance_pruning = false);

/// All homomorphisms sorted lexicographically. Throws BudgetExceeded (with
/// the partial count) once more than `opts.cap` are found.
std::vector<HomMap> enumerate_homs(const Graph& g, const Graph& h, const HomOptions& opts = {});
std::size_t count_homs(const Graph& g, const Graph& h, const HomOptions& opts = {});
bool has_hom(const Graph& g, const Graph& h, bool distance_pruning = false);

bool is_homomorphism(const Graph& g, const Graph& h, const HomMap& map);
/// (psi o phi)
HomMap compose(const HomMap& phi, const HomMap& psi);

bool is_rigid(const Graph& g);
bool are_incomparable(const Graph& a, const Graph& b);

} // namespace homforge
