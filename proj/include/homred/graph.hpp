#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace homred {

using Vertex = std::size_t;

// Undirected edge, stored with u < v.
struct Edge
{
    Vertex u;
    Vertex v;

    auto operator<=>(const Edge &) const = default;
};

struct Bipartition
{
    std::vector<Vertex> left;
    std::vector<Vertex> right;
    std::vector<int> side;  // 0 = left, 1 = right, indexed by vertex
};

// Simple undirected graph on vertices 0..n-1. Immutable once built; the
// bipartition (BFS 2-colouring, smallest vertex of each component on the
// left) is attached whenever the graph is bipartite.
class Graph
{
public:
    Graph() = default;

    // Throws PreconditionError on out-of-range vertices, self-loops or
    // duplicate edges.
    Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>> & edges);

    auto vertex_count() const -> std::size_t { return n_; }
    auto edge_count() const -> std::size_t { return edges_.size(); }

    // In insertion order.
    auto edges() const -> const std::vector<Edge> & { return edges_; }

    // Sorted ascending.
    auto neighbours(Vertex v) const -> const std::vector<Vertex> & { return adjacency_[v]; }
    auto degree(Vertex v) const -> std::size_t { return adjacency_[v].size(); }
    auto adjacent(Vertex u, Vertex v) const -> bool;

    auto bipartition() const -> const std::optional<Bipartition> & { return bipartition_; }
    auto is_bipartite() const -> bool { return bipartition_.has_value(); }

    // Same vertex count and edge set, regardless of insertion order.
    auto operator==(const Graph & other) const -> bool
    {
        return n_ == other.n_ && adjacency_ == other.adjacency_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::optional<Bipartition> bipartition_;
};

// Hyperedges are vertex sets (sorted, no repeats); the hyperedge collection is
// a multiset, so repeated hyperedges are kept and counted.
class Hypergraph
{
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> hyperedges);

    auto vertex_count() const -> std::size_t { return n_; }
    auto hyperedge_count() const -> std::size_t { return hyperedges_.size(); }
    auto hyperedges() const -> const std::vector<std::vector<Vertex>> & { return hyperedges_; }

    // Largest hyperedge size (0 for no hyperedges).
    auto rank() const -> std::size_t;

    auto operator==(const Hypergraph &) const -> bool = default;

private:
    std::size_t n_ = 0;
    std::vector<std::vector<Vertex>> hyperedges_;
};

enum class TreeKind
{
    Path,
    Star,
    Junction,
    J3Star,
    Custom
};

struct TreeSpec
{
    TreeKind kind;
    std::size_t parameter = 0;  // n for Path/Star (Star(n) = K_{1,n}), q for Junction
    std::optional<Graph> custom;
};

// A target tree together with the labels the gadget builders refer to:
// J_q uses "w", "c<i>", "c'<i>"; J3Star uses "w", "x0", "x1", "x2.<i>",
// "y0", "y1", "y2.<i>", "y3.<i>.<j>", "z0", "z1", "z2.<i>", "z3.<i>.<j>",
// "z4.<i>.<j>.<k>" (indices 1-based).
struct TargetTree
{
    TreeKind kind;
    Graph graph;
    std::map<std::string, Vertex> labels;

    auto at(const std::string & label) const -> Vertex;
};

auto build_target_tree(const TreeSpec & spec) -> TargetTree;

auto path_graph(std::size_t n) -> Graph;
auto star_graph(std::size_t leaves) -> Graph;
auto complete_graph(std::size_t n) -> Graph;
auto complete_bipartite_graph(std::size_t a, std::size_t b) -> Graph;
auto cycle_graph(std::size_t n) -> Graph;
auto junction_tree(std::size_t q) -> TargetTree;
auto j3_star_tree() -> TargetTree;

enum class Pattern
{
    P4,
    J3
};

// The pattern graph; for J3 the vertices are w=0, x0=1, x1=2, y0=3, y1=4,
// z0=5, z1=6.
auto pattern_graph(Pattern pattern) -> Graph;

// Induced embedding of pattern into host: result[i] is the host vertex for
// pattern vertex i. Complete backtracking search in lexicographic order of
// host vertices, so the first embedding found is deterministic.
auto find_induced(const Graph & host, const Graph & pattern) -> std::optional<std::vector<Vertex>>;

auto contains_induced(const Graph & host, Pattern pattern) -> bool;

enum class TreeClass
{
    Star,
    BisEquivalent,
    ContainsJ3
};

auto to_string(TreeClass c) -> std::string;

auto is_tree(const Graph & g) -> bool;

// Throws PreconditionError when g is not a tree.
auto classify_tree(const Graph & g) -> TreeClass;

struct Stretch
{
    Graph graph;
    std::vector<Vertex> midpoint;  // midpoint[e] for edge index e of the input
};

// Subdivides every edge once. Original vertices keep their ids; the midpoint
// of edge e is vertex n + e.
auto two_stretch(const Graph & g) -> Stretch;

// Connected components, each sorted, ordered by smallest vertex.
auto components(const Graph & g) -> std::vector<std::vector<Vertex>>;

auto is_connected(const Graph & g) -> bool;

// Subgraph induced by the given vertices; vertex i of the result is
// vertices[i].
auto induced_subgraph(const Graph & g, const std::vector<Vertex> & vertices) -> Graph;

auto parse_graph(std::string_view text) -> Graph;
auto parse_hypergraph(std::string_view text) -> Hypergraph;
auto write_graph(const Graph & g) -> std::string;
auto write_hypergraph(const Hypergraph & h) -> std::string;

}
