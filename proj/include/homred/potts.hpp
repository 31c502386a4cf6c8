#pragma once

#include "homred/graph.hpp"
#include "homred/rational.hpp"

#include <vector>

namespace homred {

struct PottsParams
{
    unsigned long q = 2;
    Rational gamma = 1;
};

// Number of edges (hyperedges) whose vertices all share a colour under sigma.
auto monochromatic_edges(const Graph & g, const std::vector<std::size_t> & sigma) -> std::size_t;
auto monochromatic_hyperedges(const Hypergraph & h, const std::vector<std::size_t> & sigma) -> std::size_t;

// sum over sigma: V -> [q] of prod over edges of (1 + gamma [sigma(u) = sigma(v)]).
auto potts_graph(const Graph & g, const PottsParams & params) -> Rational;

// As above with one factor per hyperedge, counted with multiplicity. Direct
// enumeration of the q^n assignments; refuses beyond the enumeration cap.
auto potts_hypergraph(const Hypergraph & h, const PottsParams & params) -> Rational;

// sum over A subset of E of gamma^|A| q^c(A), c(A) the components of (V, A).
auto random_cluster_oracle(const Graph & g, const PottsParams & params) -> Rational;

// Proper q-colourings of a bipartite graph.
auto count_proper_colourings(const Graph & g, unsigned long q) -> Integer;

struct BqcolReduction
{
    Stretch stretch;
    Integer scale;   // (q - 2)^|E|
    Rational gamma;  // 1 / (q - 2)
};

// colourings(stretch, q) = scale * potts_graph(g, q, gamma).
auto reduce_potts_to_bqcol(const Graph & g, unsigned long q) -> BqcolReduction;

}
