#include "homred/convex.hpp"
#include "homred/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace homred;

namespace
{
    // U = {0,1,2,3} (labels 1..4), U' = {4,5,6} (labels 1..3).
    auto referee_graph() -> Graph
    {
        return Graph(7, {{0, 4}, {1, 4}, {2, 4}, {2, 5}, {2, 6}, {3, 6}});
    }

    auto j3_free_trees(std::size_t max_n) -> std::vector<Graph>
    {
        std::vector<Graph> out;
        for (const auto & t : oracle::trees_up_to(max_n))
            if (t.vertex_count() >= 2 && ! contains_induced(t, Pattern::J3))
                out.push_back(t);
        return out;
    }

    auto random_weights(oracle::Rng & rng, std::size_t n, std::size_t h, double zero_p) -> WeightTable
    {
        return WeightTable{h, rng.weights(n, h, zero_p)};
    }
}

TEST_CASE("interval maps of the referee example")
{
    auto h = referee_graph();
    auto order = interval_maps(h, {0, 1, 2, 3}, {4, 5, 6});
    REQUIRE(order);
    CHECK(order->m[2] == 1);
    CHECK(order->M[2] == 3);
    CHECK(order->m == std::vector<std::size_t>{1, 1, 1, 3});
    CHECK(order->M == std::vector<std::size_t>{1, 1, 3, 3});
    CHECK(order->m_prime[0] == 1);
    CHECK(order->M_prime[0] == 3);
    CHECK(order->m_prime[1] == 3);
    CHECK(order->M_prime[1] == 3);
    CHECK(order->m_prime[2] == 3);
    CHECK(order->M_prime[2] == 4);
    CHECK(is_valid_convex_order(h, *order));

    CHECK_FALSE(interval_maps(h, {0, 2, 1, 3}, {4, 5, 6}));
    CHECK_FALSE(interval_maps(h, {0, 1, 2, 3}, {5, 4, 6}));

    auto built = convex_order(h);
    CHECK(is_valid_convex_order(h, built));
}

TEST_CASE("convex_order examples")
{
    auto p4 = convex_order(path_graph(4));
    CHECK(is_valid_convex_order(path_graph(4), p4));
    for (std::size_t i = 0; i < p4.m.size(); ++i)
        CHECK(p4.M[i] - p4.m[i] <= 1);

    // K_{1,3} with the centre on the right side: every left vertex sees [1, 1].
    Graph star(4, {{0, 3}, {1, 3}, {2, 3}});
    auto s = convex_order(star);
    CHECK(s.right == std::vector<Vertex>{3});
    CHECK(s.m == std::vector<std::size_t>{1, 1, 1});
    CHECK(s.M == std::vector<std::size_t>{1, 1, 1});

    CHECK_THROWS_AS(convex_order(junction_tree(3).graph), PreconditionError);
    CHECK_THROWS_AS(convex_order(cycle_graph(4)), PreconditionError);
    CHECK_THROWS_AS(convex_order(Graph(1, {})), PreconditionError);
}

TEST_CASE("convex_order is valid on every J3-free tree up to 12 vertices")
{
    auto trees = j3_free_trees(12);
    CHECK(trees.size() > 100);
    for (const auto & t : trees) {
        auto order = convex_order(t);
        CHECK(is_valid_convex_order(t, order));

        // Relabel so each qualifying leaf in turn is the smallest index.
        for (Vertex u = 0; u < t.vertex_count(); ++u) {
            if (t.degree(u) != 1)
                continue;
            std::vector<Vertex> perm(t.vertex_count());
            for (Vertex v = 0; v < t.vertex_count(); ++v)
                perm[v] = v == u ? 0 : (v < u ? v + 1 : v);
            std::vector<std::pair<Vertex, Vertex>> edges;
            for (const auto & e : t.edges())
                edges.emplace_back(perm[e.u], perm[e.v]);
            Graph relabelled(t.vertex_count(), edges);
            CHECK(is_valid_convex_order(relabelled, convex_order(relabelled)));
        }
    }
}

TEST_CASE("side reductions")
{
    auto p4 = path_graph(4);
    auto order = convex_order(p4);
    auto k2 = path_graph(2);
    auto unit = WeightTable::uniform(2, 4);
    auto left = count_wcsp(reduce_whom_side(k2, unit, p4, order, Side::Left).instance);
    auto right = count_wcsp(reduce_whom_side(k2, unit, p4, order, Side::Right).instance);
    CHECK(left == 3);
    CHECK(right == 3);
    CHECK(left + right == count_hom(k2, p4));

    // Single vertex: the left side collects the colours in U = {0, 2}.
    Graph k1(1, {});
    WeightTable w{4, {{Rational(2), Rational(3), Rational(5), Rational(7)}}};
    CHECK(count_wcsp(reduce_whom_side(k1, w, p4, order, Side::Left).instance) == 2 + 5);
    CHECK(count_wcsp(reduce_whom_side(k1, w, p4, order, Side::Right).instance) == 3 + 7);

    // Zeroing colours matches a weighted count restricted to that side.
    WeightTable z{4, {{Rational(1), Rational(0), Rational(2), Rational(1)}, {Rational(0), Rational(4), Rational(1), Rational(1)}}};
    auto zl = count_wcsp(reduce_whom_side(k2, z, p4, order, Side::Left).instance);
    auto zr = count_wcsp(reduce_whom_side(k2, z, p4, order, Side::Right).instance);
    CHECK(zl + zr == count_whom(k2, p4, z));
    WeightTable z_left = z;
    z_left.rows[0][1] = z_left.rows[0][3] = 0;
    CHECK(zl == count_whom(k2, p4, z_left));

    CHECK_THROWS_AS(reduce_whom_side(Graph(2, {}), WeightTable::uniform(2, 4), p4, order, Side::Left), PreconditionError);
    CHECK_THROWS_AS(reduce_whom_side(cycle_graph(3), WeightTable::uniform(3, 4), p4, order, Side::Left), PreconditionError);
}

TEST_CASE("satisfying assignments decode one-to-one onto side homomorphisms")
{
    oracle::Rng rng(41);
    auto trees = j3_free_trees(6);
    for (int t = 0; t < 40; ++t) {
        const auto & h = trees[rng.uniform(0, trees.size() - 1)];
        auto order = convex_order(h);
        Graph g = rng.tree(rng.uniform(1, 3));
        if (t % 3 == 0 && g.vertex_count() >= 3)
            g = Graph(4, {{0, 1}, {1, 2}, {2, 3}});
        auto unit = WeightTable::uniform(g.vertex_count(), h.vertex_count());
        const auto & hs = h.bipartition()->side;
        const auto & gs = g.bipartition()->side;

        for (auto side : {Side::Left, Side::Right}) {
            auto red = reduce_whom_side(g, unit, h, order, side);
            std::set<std::vector<Vertex>> decoded;
            std::size_t solutions = 0;
            oracle::for_each_solution(red.instance.csp, [&](const auto & tau) {
                ++solutions;
                decoded.insert(decode_assignment(red, tau));
            });
            std::set<std::vector<Vertex>> expected;
            oracle::for_each_assignment(g.vertex_count(), h.vertex_count(), [&](const auto & s) {
                for (const auto & e : g.edges())
                    if (! h.adjacent(s[e.u], s[e.v]))
                        return;
                for (Vertex v = 0; v < g.vertex_count(); ++v)
                    if (hs[s[v]] != (gs[v] ^ (side == Side::Right ? 1 : 0)))
                        return;
                expected.insert(std::vector<Vertex>(s.begin(), s.end()));
            });
            CHECK(solutions == decoded.size());
            CHECK(decoded == expected);
        }
    }
}

TEST_CASE("whom_via_csp examples")
{
    auto p4 = path_graph(4);
    CHECK(whom_via_csp(cycle_graph(4), WeightTable::uniform(4, 4), p4) == oracle::hom(cycle_graph(4), p4));
    CHECK(whom_via_csp(cycle_graph(5), WeightTable::uniform(5, 4), p4) == 0);
    CHECK(whom_via_csp(Graph(2, {}), WeightTable{1, {{Rational(3)}, {Rational(1, 2)}}}, Graph(1, {})) == Rational(3, 2));
    CHECK(whom_via_csp(path_graph(2), WeightTable::uniform(2, 1), Graph(1, {})) == 0);
    CHECK_THROWS_AS(whom_via_csp(path_graph(2), WeightTable::uniform(2, 7), junction_tree(3).graph), PreconditionError);
}

TEST_CASE("whom_via_csp equals count_whom on random instances")
{
    oracle::Rng rng(2024);
    auto trees = j3_free_trees(8);
    for (int t = 0; t < 120; ++t) {
        const auto & h = trees[rng.uniform(0, trees.size() - 1)];
        auto g = rng.graph(rng.uniform(1, 6), t % 2 ? 0.3 : 0.5);
        auto w = random_weights(rng, g.vertex_count(), h.vertex_count(), t % 3 ? 0.0 : 0.3);
        CHECK(whom_via_csp(g, w, h) == count_whom(g, h, w));
    }
}

TEST_CASE("the full pipeline through the weight gadget")
{
    oracle::Rng rng(77);
    auto trees = j3_free_trees(5);
    for (int t = 0; t < 20; ++t) {
        const auto & h = trees[rng.uniform(0, trees.size() - 1)];
        auto order = convex_order(h);
        auto g = rng.tree(rng.uniform(1, 3));
        WeightTable w{h.vertex_count(), {}};
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            std::vector<Rational> row;
            for (Vertex c = 0; c < h.vertex_count(); ++c)
                row.push_back(Rational(static_cast<long>(rng.uniform(0, 3)), static_cast<unsigned long>(rng.uniform(1, 2))));
            for (auto & x : row)
                x.canonicalize();
            w.rows.push_back(row);
        }
        Rational total = 0;
        for (auto side : {Side::Left, Side::Right}) {
            auto red = reduce_whom_side(g, w, h, order, side);
            auto cleared = clear_denominators(red.instance);
            auto compiled = compile_weight_gadget(cleared.instance);
            Rational z = Rational(count_csp(compiled.instance)) / cleared.scale;
            CHECK(z == count_wcsp(red.instance));
            total += z;
        }
        CHECK(total == count_whom(g, h, w));
    }
}
