#pragma once

#include "homred/convex.hpp"
#include "homred/graph.hpp"
#include "homred/hom_count.hpp"
#include "homred/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace homred {

// A three-terminal multiterminal cut problem with its answer: b is the
// minimum size of an edge set separating every pair of terminals, and
// `count` the number of such sets of size b.
struct CutInstance
{
    Graph graph;
    std::array<Vertex, 3> terminals{};
    std::size_t b = 0;
    Integer count = 0;
};

// Exhaustive search over edge subsets by increasing size. Requires a connected
// graph, distinct terminals and 2^|E| within the enumeration cap (2^24).
auto multiterminal_cuts(const Graph & g, const std::array<Vertex, 3> & terminals) -> CutInstance;

// True when removing `cut` (edge indices) leaves the terminals pairwise
// disconnected.
auto separates_terminals(const Graph & g, const std::array<Vertex, 3> & terminals, const std::vector<std::size_t> & cut)
    -> bool;

// Role labels "w", "x0", "x1", "y0", "y1", "z0", "z1" of an induced J3.
using J3Embedding = std::map<std::string, Vertex>;

auto find_induced_j3(const Graph & h) -> J3Embedding;

enum class ReductionKind
{
    CutToWhom,
    PottsToJq,
    JqToHyperPotts,
    Uniformize,
    CutToJ3Star
};

auto to_string(ReductionKind kind) -> std::string;
auto parse_reduction_kind(std::string_view text) -> ReductionKind;

struct GadgetOptions
{
    std::optional<unsigned long> s;  // replaces the smallest admissible s
    bool materialise = false;        // evaluate the expanded graph instead of multiplicities
};

// The input side of a reduction; which fields are set depends on the kind.
struct ReductionSource
{
    std::optional<CutInstance> cut;
    std::optional<Graph> graph;
    std::optional<Hypergraph> hypergraph;
    std::optional<Graph> target;
    J3Embedding embedding;
    unsigned long q = 0;
    Rational gamma = 0;
    Side side = Side::Left;
    GadgetOptions options;
};

struct ReductionCertificate
{
    ReductionKind kind = ReductionKind::CutToWhom;
    ReductionSource source;

    // Transformed instance in file form.
    std::optional<Graph> graph;
    std::optional<WeightTable> weights;
    std::optional<Hypergraph> hypergraph;

    // The same partition function with repeated parts kept as multiplicities
    // and pendant copies. Empty for hypergraph outputs.
    EdgeWeightedInstance structured;

    // Pins (structured vertex -> target colour) selecting typical colourings.
    std::map<Vertex, Vertex> typical;

    std::map<std::string, Integer> constants;
    Rational scale = 1;  // Z*
    Rational slack = 0;  // 0 for identities, 1/4 for sandwiches
    std::map<std::string, Rational> counters;
};

auto build_cut_to_whom(const CutInstance & cut, const Graph & h, const J3Embedding & embedding,
        const GadgetOptions & options = {}) -> ReductionCertificate;

// Requires q > 2 and G connected.
auto build_potts_to_jq(const Graph & g, unsigned long q, const GadgetOptions & options = {}) -> ReductionCertificate;

// Hypergraph on the chosen side U (vertices renumbered in increasing order)
// with one hyperedge N(v) per vertex v on the other side.
auto build_jq_to_hyperpotts(const Graph & b, Side side) -> Hypergraph;

// Homomorphisms B -> J_q with every vertex of side U coloured in {c'_i}.
auto jq_side_count(const Graph & b, unsigned long q, Side side) -> Integer;

auto certify_jq_to_hyperpotts(const Graph & b, unsigned long q, Side side) -> ReductionCertificate;

auto uniformize(const Hypergraph & h, unsigned long q, const Rational & gamma) -> ReductionCertificate;

auto build_cut_to_j3star(const CutInstance & cut, const GadgetOptions & options = {}) -> ReductionCertificate;

// Rebuilds the certificate from its source.
auto rebuild_certificate(const ReductionCertificate & cert) -> ReductionCertificate;

// Z of the transformed instance plus the kind's classification counters,
// stored into cert.counters.
auto evaluate_certificate(ReductionCertificate & cert) -> Rational;

// The source-side quantity the sandwich should recover, computed without the
// gadget.
auto independent_oracle(const ReductionCertificate & cert) -> Rational;

// Re-checks that every constant is the smallest satisfying its inequality.
auto constants_minimal(const ReductionCertificate & cert) -> bool;

struct VerificationReport
{
    Rational value;
    Rational lower;
    Rational ratio;
    Rational upper;
    std::optional<Integer> recovered;  // floor(ratio) for sandwich certificates
    std::map<std::string, bool> checks;
    bool pass = false;
};

// lower = oracle, upper = oracle + slack; passes when lower <= Z/Z* <= upper
// and every kind-specific check holds. Evaluates the certificate first unless
// counters already carry "Z".
auto verify_certificate(ReductionCertificate & cert, const Rational & oracle) -> VerificationReport;

}
