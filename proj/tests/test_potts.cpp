#include "homred/error.hpp"
#include "homred/potts.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace homred;

TEST_CASE("potts_graph examples")
{
    CHECK(potts_graph(Graph(1, {}), {5, 3}) == 5);
    CHECK(potts_graph(cycle_graph(4), {3, 0}) == 81);
    CHECK(potts_graph(path_graph(2), {3, 3}) == 18);
    CHECK(potts_graph(path_graph(2), {1, Rational(1, 2)}) == Rational(3, 2));
}

TEST_CASE("potts_graph matches enumeration and multiplies over disjoint unions")
{
    oracle::Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        auto g = rng.graph(rng.uniform(1, 6), 0.4);
        auto q = rng.uniform(1, 4);
        auto gamma = rng.weight();
        auto value = potts_graph(g, {q, gamma});
        CHECK(value == oracle::potts(g, q, gamma));
        Rational product = 1;
        for (const auto & c : components(g))
            product *= potts_graph(induced_subgraph(g, c), {q, gamma});
        CHECK(value == product);
    }
}

TEST_CASE("potts_hypergraph")
{
    CHECK(potts_hypergraph(Hypergraph(3, {{0, 1, 2}}), {2, 1}) == 10);
    Hypergraph singletons(3, {{0}, {1}, {1}, {2}});
    CHECK(potts_hypergraph(singletons, {3, 2}) == 81 * 27);

    oracle::Rng rng(2);
    for (int i = 0; i < 30; ++i) {
        auto g = rng.graph(rng.uniform(1, 6), 0.5);
        std::vector<std::vector<Vertex>> edges;
        for (const auto & e : g.edges())
            edges.push_back({e.u, e.v});
        Hypergraph as_hyper(g.vertex_count(), edges);
        CHECK(potts_hypergraph(as_hyper, {3, Rational(1, 2)}) == potts_graph(g, {3, Rational(1, 2)}));

        // A repeated hyperedge contributes its factor twice.
        std::vector<std::vector<Vertex>> mixed = edges;
        auto n = g.vertex_count();
        mixed.push_back({0});
        if (n >= 3)
            mixed.push_back({0, 1, 2});
        if (! edges.empty())
            mixed.push_back(edges.front());
        Hypergraph h(n, mixed);
        CHECK(potts_hypergraph(h, {2, 3}) == oracle::hyper_potts(h, 2, 3));
    }
    CHECK_THROWS_AS(Hypergraph(2, {{}}), PreconditionError);
}

TEST_CASE("monochromatic counts")
{
    CHECK(monochromatic_edges(path_graph(4), {0, 0, 1, 1}) == 2);
    CHECK(monochromatic_hyperedges(Hypergraph(3, {{0, 1, 2}, {2}, {0, 1}}), {1, 1, 0}) == 2);
}

TEST_CASE("random cluster oracle")
{
    CHECK(random_cluster_oracle(path_graph(2), {3, 3}) == 18);
    CHECK(random_cluster_oracle(Graph(4, {}), {3, 7}) == 81);
    CHECK(random_cluster_oracle(complete_graph(3), {2, 1}) == potts_graph(complete_graph(3), {2, 1}));
}

TEST_CASE("proper colourings")
{
    CHECK(count_proper_colourings(path_graph(2), 5) == 20);
    CHECK(count_proper_colourings(path_graph(3), 3) == 12);
    CHECK(count_proper_colourings(cycle_graph(4), 3) == 18);
    CHECK_THROWS_AS(count_proper_colourings(complete_graph(3), 3), PreconditionError);
}

TEST_CASE("colouring reduction")
{
    auto k2 = reduce_potts_to_bqcol(path_graph(2), 3);
    CHECK(k2.scale == 1);
    CHECK(count_proper_colourings(k2.stretch.graph, 3) == 12);
    CHECK(potts_graph(path_graph(2), {3, k2.gamma}) == 12);

    auto tri = reduce_potts_to_bqcol(complete_graph(3), 3);
    CHECK(Rational(count_proper_colourings(tri.stretch.graph, 3)) == potts_graph(complete_graph(3), {3, 1}));

    auto k2q4 = reduce_potts_to_bqcol(path_graph(2), 4);
    CHECK(k2q4.scale == 2);
    CHECK(count_proper_colourings(k2q4.stretch.graph, 4) == 36);
    CHECK(k2q4.scale * potts_graph(path_graph(2), {4, k2q4.gamma}) == 36);

    CHECK_THROWS_AS(reduce_potts_to_bqcol(path_graph(2), 2), PreconditionError);
}
