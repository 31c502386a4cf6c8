#include "homred/code_weight.hpp"
#include "homred/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace homred;

TEST_CASE("weight enumerator examples")
{
    CHECK(weight_enumerator(LinearCode{2, 4, {{0, 0, 0, 0}, {0, 0, 0, 0}}}, Rational(1, 3)) == 1);
    CHECK(weight_enumerator(LinearCode{2, 5, {}}, Rational(1, 3)) == 1);
    Rational l(2, 5);
    CHECK(weight_enumerator(LinearCode{2, 6, {{1, 1, 1, 1, 1, 1}}}, l) == 1 + pow(l, 6));
    CHECK(weight_enumerator(LinearCode{3, 3, {{0, 1, 2}}}, l) == 1 + 2 * l * l);
    // Duplicate and dependent rows do not add codewords.
    CHECK(weight_enumerator(LinearCode{3, 3, {{0, 1, 2}, {0, 2, 1}, {0, 1, 2}}}, l) == 1 + 2 * l * l);

    CHECK_THROWS_AS(weight_enumerator(LinearCode{4, 2, {{1, 1}}}, l), PreconditionError);
    CHECK_THROWS_AS(weight_enumerator(LinearCode{3, 2, {{1, 3}}}, l), PreconditionError);
    CHECK_THROWS_AS(weight_enumerator(LinearCode{3, 2, {{1}}}, l), PreconditionError);
}

TEST_CASE("weight enumerator matches distinct-codeword enumeration")
{
    oracle::Rng rng(12);
    for (int i = 0; i < 80; ++i) {
        unsigned long p = i % 3 == 0 ? 3 : i % 3 == 1 ? 2 : 5;
        auto rows = rng.uniform(0, p == 5 ? 3 : 5);
        auto length = rng.uniform(1, 7);
        LinearCode code{p, length, {}};
        for (std::size_t r = 0; r < rows; ++r) {
            std::vector<unsigned long> row;
            for (std::size_t j = 0; j < length; ++j)
                row.push_back(rng.chance(0.4) ? 0 : rng.uniform(0, p - 1));
            code.rows.push_back(row);
        }
        Rational lambda(rng.uniform(1, 5), 7);
        CHECK(weight_enumerator(code, lambda) == oracle::weight_enumerator(p, length, code.rows, lambda));
        CHECK(weight_enumerator(code, 1) == Rational(pow(Integer(p), row_basis(code).size())));
    }
}

TEST_CASE("code file format")
{
    auto code = parse_code("# a ternary code\ncode 3 2 3\n0 1 2\n1 1 0\n");
    CHECK(code.p == 3);
    CHECK(code.length == 3);
    CHECK(code.rows == Matrix{{0, 1, 2}, {1, 1, 0}});
    CHECK(parse_code(write_code(code)).rows == code.rows);
    CHECK_THROWS_AS(parse_code("code 4 1 2\n1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_code("code 3 1 2\n1 3\n"), ParseError);
    CHECK_THROWS_AS(parse_code("code 3 2 2\n1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_code("code 3 1 2\n1\n"), ParseError);
}

TEST_CASE("linear forms vanish as predicted")
{
    for (unsigned long p : {2, 3})
        for (unsigned long k : {1, 2}) {
            auto system = build_potts_code(path_graph(2), p, k);
            CHECK(system.forms.size() == system.q);
            for (unsigned long z = 0; z < system.q; ++z) {
                auto digits = colour_digits(z, p, k);
                std::size_t zeros = 0;
                for (const auto & alpha : system.forms) {
                    unsigned long value = 0;
                    for (unsigned long i = 0; i < k; ++i)
                        value = (value + alpha[i] * digits[i]) % p;
                    zeros += value == 0;
                }
                CHECK(zeros == (z == 0 ? system.q : system.q / p));
            }
        }
}

TEST_CASE("Potts code system for K2 over F_3")
{
    auto system = build_potts_code(path_graph(2), 3, 1);
    CHECK(system.equations.size() == 3);
    CHECK(system.equations.front().size() == 2);
    std::set<std::vector<unsigned long>> words;
    std::map<std::vector<unsigned long>, int> preimages;
    for (unsigned long a = 0; a < 3; ++a)
        for (unsigned long b = 0; b < 3; ++b) {
            auto w = assignment_codeword(system, {a, b});
            words.insert(w);
            ++preimages[w];
        }
    CHECK(words == std::set<std::vector<unsigned long>>{{0, 0, 0}, {0, 1, 2}, {0, 2, 1}});
    for (const auto & [w, count] : preimages)
        CHECK(count == 3);
}

TEST_CASE("unsat equals codeword weight and the map is q to 1")
{
    for (auto [p, k] : {std::pair{3UL, 1UL}, {2UL, 2UL}, {2UL, 1UL}})
        for (const auto & g : {path_graph(2), path_graph(3), complete_graph(3), star_graph(3)}) {
            auto system = build_potts_code(g, p, k);
            CHECK(system.equations.size() == system.q * g.edge_count());
            CHECK(system.equations.front().size() == k * g.vertex_count());
            std::map<std::vector<unsigned long>, unsigned long> preimages;
            oracle::for_each_assignment(g.vertex_count(), system.q, [&](const auto & s) {
                std::vector<unsigned long> sigma(s.begin(), s.end());
                auto b = assignment_codeword(system, sigma);
                ++preimages[b];
                // Equation (e, j) holds iff alpha_j . (phi(sigma v) - phi(sigma u)) = 0.
                std::size_t unsat = 0;
                for (std::size_t e = 0; e < g.edge_count(); ++e) {
                    auto du = colour_digits(sigma[g.edges()[e].u], p, k), dv = colour_digits(sigma[g.edges()[e].v], p, k);
                    for (const auto & alpha : system.forms) {
                        unsigned long value = 0;
                        for (unsigned long i = 0; i < k; ++i)
                            value = (value + alpha[i] * (dv[i] + p - du[i])) % p;
                        unsat += value != 0;
                    }
                }
                std::size_t weight = 0;
                for (auto x : b)
                    weight += x != 0;
                CHECK(weight == unsat);
            });
            for (const auto & [b, count] : preimages)
                CHECK(count == system.q);
            CHECK(Integer(preimages.size()) == pow(Integer(p), row_basis(system.code()).size()));
        }
}

TEST_CASE("Potts weight-enumerator identity")
{
    auto k2 = verify_potts_we(path_graph(2), 3, 1, Rational(1, 2));
    CHECK(k2.gamma == 3);
    CHECK(k2.potts == 18);
    CHECK(k2.enumerator == Rational(3, 2));
    CHECK(k2.prefactor == 12);
    CHECK(k2.pass);

    auto tri = verify_potts_we(complete_graph(3), 2, 2, Rational(1, 2));
    CHECK(tri.gamma == 3);
    CHECK(tri.pass);

    for (const auto & g : {path_graph(4), cycle_graph(4), star_graph(3)})
        for (auto reversed : {false, true})
            CHECK(verify_potts_we(g, 3, 1, Rational(2, 3), reversed).pass);

    CHECK(verify_potts_we(path_graph(3), 2, 1, Rational(1, 3)).pass);
    CHECK_THROWS_AS(verify_potts_we(path_graph(2), 3, 1, 1), PreconditionError);
    CHECK_THROWS_AS(verify_potts_we(path_graph(2), 3, 1, 0), PreconditionError);
    CHECK_THROWS_AS(verify_potts_we(Graph(3, {{0, 1}}), 3, 1, Rational(1, 2)), PreconditionError);
    CHECK_THROWS_AS(build_potts_code(path_graph(2), 6, 1), PreconditionError);
}
