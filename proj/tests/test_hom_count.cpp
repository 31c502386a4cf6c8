#include "homred/error.hpp"
#include "homred/hom_count.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace homred;

TEST_CASE("count_hom examples")
{
    CHECK(count_hom(Graph(1, {}), junction_tree(3).graph) == 7);
    CHECK(count_hom(path_graph(2), path_graph(4)) == 6);
    CHECK(count_hom(cycle_graph(5), j3_star_tree().graph) == 0);
    CHECK(count_hom(Graph(0, {}), path_graph(3)) == 1);
    CHECK(count_hom(path_graph(2), Graph(0, {})) == 0);
}

TEST_CASE("count_hom matches enumeration and multiplies over components")
{
    oracle::Rng rng(21);
    for (int i = 0; i < 80; ++i) {
        auto g = rng.graph(rng.uniform(1, 6), 0.4);
        auto h = i % 3 ? rng.tree(rng.uniform(1, 6)) : rng.graph(rng.uniform(1, 5), 0.5);
        auto value = count_hom(g, h);
        CHECK(value == oracle::hom(g, h));
        Integer product = 1;
        for (const auto & c : components(g))
            product *= count_hom(induced_subgraph(g, c), h);
        CHECK(value == product);
    }
}

TEST_CASE("P4 counts twice the independent sets")
{
    for (std::size_t n = 1; n <= 8; ++n) {
        oracle::Rng rng(n);
        for (int i = 0; i < 25; ++i) {
            auto g = rng.graph(n, 0.35);
            if (! g.is_bipartite() || ! is_connected(g))
                continue;
            CHECK(count_hom(g, path_graph(4)) == 2 * oracle::independent_sets(g));
        }
    }
}

TEST_CASE("count_whom")
{
    auto j3 = junction_tree(3).graph;
    WeightTable w{7, {{Rational(1, 2), 2, 0, 3, 1, 1, Rational(5, 7)}}};
    CHECK(count_whom(Graph(1, {}), j3, w) == Rational(1, 2) + 2 + 3 + 1 + 1 + Rational(5, 7));

    oracle::Rng rng(4);
    for (int i = 0; i < 60; ++i) {
        auto g = rng.graph(rng.uniform(1, 6), 0.4);
        auto weights = rng.weights(g.vertex_count(), 7, 0.2);
        CHECK(count_whom(g, j3, WeightTable{7, weights}) == oracle::whom(g, j3, weights));
        CHECK(count_whom(g, j3, WeightTable::uniform(g.vertex_count(), 7)) == count_hom(g, j3));
    }
    CHECK_THROWS_AS(count_whom(path_graph(2), j3, WeightTable::uniform(2, 6)), PreconditionError);
    CHECK_THROWS_AS(count_whom(path_graph(2), j3, WeightTable::uniform(3, 7)), PreconditionError);
}

TEST_CASE("weights file format")
{
    auto w = parse_weights("weights 2 3\nw 1 1 0 2/4\nw 0 3 1/3 0\n");
    CHECK(w.colours == 3);
    CHECK(w.rows[0] == std::vector<Rational>{3, Rational(1, 3), 0});
    CHECK(w.rows[1] == std::vector<Rational>{1, 0, Rational(1, 2)});
    CHECK(parse_weights(write_weights(w)).rows == w.rows);
    CHECK_THROWS_AS(parse_weights("weights 1 2\nw 0 1 -1\n"), ParseError);
    CHECK_THROWS_AS(parse_weights("weights 2 2\nw 0 1 1\nw 0 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_weights("weights 1 2\nw 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_weights("weights 1 2\nw 0 1 1/0\n"), ParseError);
}

TEST_CASE("count_ewhom with multiplicities and midpoint tables")
{
    auto j3 = junction_tree(3).graph;
    std::vector<bool> all(7, true);
    auto table = midpoint_table(j3, all);

    EdgeWeightedInstance inst(2, 7);
    inst.add_edge(0, 1, table, 2);
    Rational naive = 0;
    for (Vertex a = 0; a < 7; ++a)
        for (Vertex b = 0; b < 7; ++b)
            naive += table->at(a, b) * table->at(a, b);
    CHECK(count_ewhom(inst, j3) == naive);
    CHECK(count_ewhom(inst) == oracle::ewhom(inst));

    // A midpoint table edge counts the homomorphisms of the stretched edge.
    EdgeWeightedInstance one(2, 7);
    one.add_edge(0, 1, table);
    CHECK(count_ewhom(one) == count_hom(two_stretch(path_graph(2)).graph, j3));
}

TEST_CASE("count_ewhom equals naive enumeration on random instances")
{
    oracle::Rng rng(99);
    for (int i = 0; i < 150; ++i) {
        auto n = rng.uniform(1, 5);
        auto h = rng.uniform(1, i % 4 ? 5 : 8);
        EdgeWeightedInstance inst(n, h);
        inst.vertex_weights = rng.weights(n, h, 0.15);
        auto edges = rng.uniform(0, 7);
        for (std::size_t e = 0; e < edges && n > 1; ++e) {
            auto u = rng.uniform(0, n - 1), v = rng.uniform(0, n - 1);
            if (u == v)
                continue;
            auto t = std::make_shared<PairTable>(h);
            for (std::size_t a = 0; a < h; ++a)
                for (std::size_t b = 0; b < h; ++b)
                    t->at(a, b) = rng.weight(0.3);
            inst.add_edge(u, v, t, rng.uniform(1, 3));
        }
        CHECK(count_ewhom(inst) == oracle::ewhom(inst));
    }
}

TEST_CASE("replicated pendant branches")
{
    // A star K_{1,3} core equals a single leaf replicated three times.
    auto p4 = path_graph(4);
    auto adj = adjacency_table(p4);
    EdgeWeightedInstance star(4, 4);
    for (Vertex leaf = 1; leaf <= 3; ++leaf)
        star.add_edge(0, leaf, adj);
    EdgeWeightedInstance replicated(2, 4);
    replicated.copies[1] = 3;
    replicated.add_edge(0, 1, adj);
    CHECK(count_ewhom(star) == count_hom(star_graph(3), p4));
    CHECK(count_ewhom(replicated) == count_ewhom(star));

    // Replicated two-edge chains hanging off a vertex.
    EdgeWeightedInstance chains(3, 4);
    chains.copies[1] = 4;
    chains.add_edge(0, 1, adj);
    chains.add_edge(1, 2, adj);
    std::vector<std::pair<Vertex, Vertex>> spider;
    for (Vertex i = 0; i < 4; ++i) {
        spider.emplace_back(0, 1 + 2 * i);
        spider.emplace_back(1 + 2 * i, 2 + 2 * i);
    }
    CHECK(count_ewhom(chains) == count_hom(Graph(9, spider), p4));

    // A replicated vertex inside a cycle is rejected.
    EdgeWeightedInstance bad(3, 4);
    bad.copies[0] = 2;
    bad.add_edge(0, 1, adj);
    bad.add_edge(1, 2, adj);
    bad.add_edge(2, 0, adj);
    CHECK_THROWS_AS(count_ewhom(bad), PreconditionError);
}

TEST_CASE("count_hom_pinned")
{
    auto p4 = path_graph(4);
    CHECK(count_hom_pinned(path_graph(2), p4, {{0, 1}, {1, 2}}) == 1);
    CHECK(count_hom_pinned(path_graph(2), p4, {{0, 0}, {1, 2}}) == 0);
    CHECK(count_hom_pinned(path_graph(3), p4, {{1, 1}}) == 4);
    CHECK_THROWS_AS(count_hom_pinned(path_graph(2), p4, {{0, 4}}), PreconditionError);
}

TEST_CASE("complete bipartite closed form")
{
    CHECK(complete_bipartite_whom(path_graph(2), path_graph(2), WeightTable::uniform(2, 2)) == 2);
    CHECK(complete_bipartite_whom(path_graph(3), star_graph(3), WeightTable::uniform(3, 4)) == 12);
    CHECK(complete_bipartite_whom(cycle_graph(3), star_graph(3), WeightTable::uniform(3, 4)) == 0);
    CHECK_THROWS_AS(complete_bipartite_whom(path_graph(2), path_graph(4), WeightTable::uniform(2, 4)), PreconditionError);

    auto k23 = complete_bipartite_graph(2, 3);
    oracle::Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        auto g = rng.graph(rng.uniform(1, 6), 0.35);
        WeightTable w{5, rng.weights(g.vertex_count(), 5, 0.1)};
        CHECK(complete_bipartite_whom(g, k23, w) == count_whom(g, k23, w));
    }
}

TEST_CASE("walk profiles")
{
    auto star = j3_star_tree();
    auto w = walk_profile(star.graph, star.at("w"), 3);
    CHECK(w.simple_paths == std::vector<Integer>{3, 3, 12});
    CHECK(w.walks == std::vector<Integer>{3, 6, 24});
    CHECK(walk_profile(star.graph, star.at("z1"), 3).walks[2] == 46);
    auto k2 = walk_profile(path_graph(2), 1, 3);
    CHECK(k2.simple_paths[0] == 1);
    CHECK(k2.walks[1] == 1);
    CHECK(k2.walks[2] == 1);
}

TEST_CASE("walk identities on all trees up to 12 vertices")
{
    for (const auto & t : oracle::trees_up_to(12))
        for (Vertex v = 0; v < t.vertex_count(); ++v) {
            auto p = walk_profile(t, v, 3);
            const auto & d = p.simple_paths;
            CHECK(p.walks[0] == d[0]);
            CHECK(p.walks[1] == d[0] + d[1]);
            CHECK(p.walks[2] == d[0] * d[0] + d[1] + d[2]);
        }
}

TEST_CASE("walk table rows")
{
    auto rows = walk_table();
    REQUIRE(rows.size() == 13);
    auto row = [&](const std::string & label) {
        for (const auto & r : rows)
            if (r.label == label) {
                std::vector<Integer> out = r.profile.simple_paths;
                out.insert(out.end(), r.profile.walks.begin(), r.profile.walks.end());
                return out;
            }
        FAIL("missing row " << label);
        return std::vector<Integer>{};
    };
    CHECK(row("x1") == std::vector<Integer>{6, 1, 2, 6, 7, 39});
    CHECK(row("y1") == std::vector<Integer>{5, 13, 2, 5, 18, 40});
    CHECK(row("z1") == std::vector<Integer>{4, 10, 20, 4, 14, 46});
    CHECK(row("z4.1.1.1") == std::vector<Integer>{1, 2, 3, 1, 3, 6});
}

TEST_CASE("walk maxima are attained exactly on the orbits of x1, y1, z1")
{
    auto star = j3_star_tree();
    const auto & g = star.graph;

    // Two vertices of a tree share an automorphism orbit iff the tree rooted
    // at each has the same canonical form.
    std::function<std::string(Vertex, Vertex)> rooted = [&](Vertex x, Vertex parent) {
        std::vector<std::string> kids;
        for (auto y : g.neighbours(x))
            if (y != parent)
                kids.push_back(rooted(y, x));
        std::sort(kids.begin(), kids.end());
        std::string s = "(";
        for (const auto & k : kids)
            s += k;
        return s + ")";
    };
    auto orbit = [&](Vertex v) {
        std::set<Vertex> out;
        auto code = rooted(v, g.vertex_count());
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            if (rooted(u, g.vertex_count()) == code)
                out.insert(u);
        return out;
    };

    for (std::size_t k = 0; k < 3; ++k) {
        Integer best = 0;
        std::set<Vertex> argmax;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            auto value = walk_profile(g, v, 3).walks[k];
            if (value > best) {
                best = value;
                argmax.clear();
            }
            if (value == best)
                argmax.insert(v);
        }
        const char * expected[] = {"x1", "y1", "z1"};
        CHECK(argmax == orbit(star.at(expected[k])));
    }
}
