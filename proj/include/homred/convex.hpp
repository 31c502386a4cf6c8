#pragma once

#include "homred/csp.hpp"
#include "homred/graph.hpp"
#include "homred/hom_count.hpp"

#include <optional>
#include <vector>

namespace homred {

// Orderings of the two sides U = bipartition().left and U' = right of a
// connected bipartite graph. left[i-1] is the U-vertex at position i and
// right[i-1] the U'-vertex at position i. m, M (indexed by U-position - 1)
// and m', M' (indexed by U'-position - 1) hold 1-based positions.
struct ConvexOrder
{
    std::vector<Vertex> left;
    std::vector<Vertex> right;
    std::vector<std::size_t> m, M, m_prime, M_prime;
};

// Interval maps induced by the given orders; nullopt unless every
// neighbourhood is an interval and all four maps are non-decreasing.
auto interval_maps(const Graph & h, const std::vector<Vertex> & left, const std::vector<Vertex> & right)
    -> std::optional<ConvexOrder>;

auto is_valid_convex_order(const Graph & h, const ConvexOrder & order) -> bool;

// Requires a tree with at least two vertices and no induced J3. The leaf the
// recursion starts from is the smallest-index leaf whose parent has at most
// one non-leaf neighbour.
auto convex_order(const Graph & h) -> ConvexOrder;

enum class Side
{
    Left,   // G's left side maps into U
    Right   // G's left side maps into U'
};

struct SideReduction
{
    WeightedCspInstance instance;
    std::vector<std::size_t> first;              // variable index of v_0 per G-vertex
    std::vector<std::vector<Vertex>> colours;    // position i -> H-vertex, as colours[v][i - 1]
};

// Weighted IMP-CSP instance whose weighted count is the part of Z_H(G, W)
// coming from homomorphisms that send G's left side into the chosen side of
// H. G must be connected and bipartite.
auto reduce_whom_side(const Graph & g, const WeightTable & weights, const Graph & h, const ConvexOrder & order, Side side)
    -> SideReduction;

// The homomorphism (as H-vertices) encoded by a satisfying assignment.
auto decode_assignment(const SideReduction & reduction, const std::vector<int> & tau) -> std::vector<Vertex>;

// Z_H(G, W) for a tree H without induced J3, via one reduction per side and
// component.
auto whom_via_csp(const Graph & g, const WeightTable & weights, const Graph & h) -> Rational;

}
