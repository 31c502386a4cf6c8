#pragma once

#include "homred/graph.hpp"
#include "homred/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace homred {

// Per-vertex colour weights w_v(c) for an instance over a target with
// `colours` vertices. Entries are non-negative.
struct WeightTable
{
    std::size_t colours = 0;
    std::vector<std::vector<Rational>> rows;

    static auto uniform(std::size_t vertices, std::size_t colours) -> WeightTable;

    // Throws PreconditionError if a row has the wrong length or a negative
    // entry, or if the row count differs from `vertices`.
    void validate(std::size_t vertices, std::size_t colours) const;
};

auto parse_weights(std::string_view text) -> WeightTable;
auto write_weights(const WeightTable & table) -> std::string;

// Dense colours x colours table, row-major, indexed (colour of u, colour of v).
class PairTable
{
public:
    explicit PairTable(std::size_t colours) :
        colours_(colours),
        values_(colours * colours)
    {
    }

    auto colours() const -> std::size_t { return colours_; }
    auto at(std::size_t a, std::size_t b) const -> const Rational & { return values_[a * colours_ + b]; }
    auto at(std::size_t a, std::size_t b) -> Rational & { return values_[a * colours_ + b]; }

private:
    std::size_t colours_;
    std::vector<Rational> values_;
};

// 0/1 adjacency indicator of a target graph.
auto adjacency_table(const Graph & target) -> std::shared_ptr<const PairTable>;

// T(c, c') = sum over d with allowed[d] of adj(c, d) adj(d, c'): the number of
// ways to colour a degree-2 midpoint between colours c and c'.
auto midpoint_table(const Graph & target, const std::vector<bool> & allowed) -> std::shared_ptr<const PairTable>;

struct WeightedEdge
{
    Vertex u;
    Vertex v;
    std::shared_ptr<const PairTable> table;  // indexed (colour of u, colour of v)
    unsigned long multiplicity = 1;
};

// Generalised partition-function instance:
//   sum over colourings s of prod_v weight_v(s(v)) * prod_e table_e(s(u), s(v))^mult_e.
//
// `copies[v] = k` replicates the pendant branch rooted at v (v together with
// everything hanging off it away from its single remaining neighbour) k times.
// A vertex with copies > 1 must be removable by pendant absorption.
struct EdgeWeightedInstance
{
    std::size_t vertex_count = 0;
    std::size_t colours = 0;
    std::vector<std::vector<Rational>> vertex_weights;
    std::vector<WeightedEdge> edges;
    std::vector<unsigned long> copies;

    EdgeWeightedInstance() = default;
    EdgeWeightedInstance(std::size_t vertices, std::size_t colours);

    // Instance whose value is the (weighted) homomorphism count G -> H.
    static auto from_graph(const Graph & g, const Graph & target) -> EdgeWeightedInstance;
    static auto from_graph(const Graph & g, const Graph & target, const WeightTable & weights) -> EdgeWeightedInstance;

    auto add_vertex(std::vector<Rational> weights, unsigned long copies = 1) -> Vertex;
    void add_edge(Vertex u, Vertex v, std::shared_ptr<const PairTable> table, unsigned long multiplicity = 1);

    void validate() const;
};

auto count_hom(const Graph & g, const Graph & target) -> Integer;

auto count_whom(const Graph & g, const Graph & target, const WeightTable & weights) -> Rational;

// Pendant absorption to a fixed point followed by bucket elimination over a
// greedy minimum-degree order.
auto count_ewhom(const EdgeWeightedInstance & instance) -> Rational;

// As above, checking that the instance is dimensioned to the target.
auto count_ewhom(const EdgeWeightedInstance & instance, const Graph & target) -> Rational;

// Homomorphisms extending the partial map pins (vertex -> colour).
auto count_hom_pinned(const Graph & g, const Graph & target, const std::map<Vertex, Vertex> & pins) -> Integer;

// Closed form for complete bipartite targets, evaluated per component.
auto complete_bipartite_whom(const Graph & g, const Graph & target, const WeightTable & weights) -> Rational;

struct WalkProfile
{
    std::vector<Integer> simple_paths;  // [k-1] = d_k
    std::vector<Integer> walks;         // [k-1] = w_k
};

auto walk_profile(const Graph & h, Vertex v, std::size_t kmax) -> WalkProfile;

struct WalkTableRow
{
    std::string label;
    Vertex vertex;
    WalkProfile profile;
};

// One row per canonical representative of the automorphism classes of J3*.
auto walk_table() -> std::vector<WalkTableRow>;

auto format_walk_table(const std::vector<WalkTableRow> & rows) -> std::string;

}
