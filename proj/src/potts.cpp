#include "homred/potts.hpp"
#include "homred/error.hpp"
#include "homred/hom_count.hpp"

#include <map>
#include <numeric>

namespace homred {

namespace
{
    const std::string module = "potts_model";

    void check_params(const PottsParams & params)
    {
        if (params.q < 1)
            throw PreconditionError(module, "q must be >= 1");
        if (params.gamma < -1)
            throw PreconditionError(module, "gamma must be >= -1");
    }

    auto checked_power(unsigned long base, std::size_t exponent, unsigned long long cap) -> unsigned long long
    {
        unsigned long long total = 1;
        for (std::size_t i = 0; i < exponent; ++i) {
            if (base != 0 && total > cap / base)
                return cap + 1;
            total *= base;
        }
        return total;
    }

    class UnionFind
    {
    public:
        explicit UnionFind(std::size_t n) :
            parent_(n)
        {
            std::iota(parent_.begin(), parent_.end(), 0);
        }

        auto find(std::size_t x) -> std::size_t
        {
            while (parent_[x] != x)
                x = parent_[x] = parent_[parent_[x]];
            return x;
        }

        auto unite(std::size_t a, std::size_t b) -> bool
        {
            a = find(a);
            b = find(b);
            if (a == b)
                return false;
            parent_[a] = b;
            return true;
        }

    private:
        std::vector<std::size_t> parent_;
    };
}

auto monochromatic_edges(const Graph & g, const std::vector<std::size_t> & sigma) -> std::size_t
{
    std::size_t count = 0;
    for (const auto & e : g.edges())
        if (sigma.at(e.u) == sigma.at(e.v))
            ++count;
    return count;
}

auto monochromatic_hyperedges(const Hypergraph & h, const std::vector<std::size_t> & sigma) -> std::size_t
{
    std::size_t count = 0;
    for (const auto & f : h.hyperedges()) {
        bool mono = true;
        for (auto v : f)
            mono = mono && sigma.at(v) == sigma.at(f.front());
        if (mono)
            ++count;
    }
    return count;
}

auto potts_graph(const Graph & g, const PottsParams & params) -> Rational
{
    check_params(params);
    auto table = std::make_shared<PairTable>(params.q);
    for (std::size_t a = 0; a < params.q; ++a)
        for (std::size_t b = 0; b < params.q; ++b)
            table->at(a, b) = a == b ? 1 + params.gamma : Rational(1);

    EdgeWeightedInstance instance(g.vertex_count(), params.q);
    for (const auto & e : g.edges())
        instance.add_edge(e.u, e.v, table);
    return count_ewhom(instance);
}

auto potts_hypergraph(const Hypergraph & h, const PottsParams & params) -> Rational
{
    check_params(params);
    auto n = h.vertex_count();
    auto cap = enumeration_cap(100'000'000ULL);
    if (checked_power(params.q, n, cap) > cap)
        throw CapacityError(module, "q^n = " + std::to_string(params.q) + "^" + std::to_string(n)
                + " exceeds the enumeration cap " + std::to_string(cap));

    // Distinct hyperedges with multiplicities; singletons are always monochromatic.
    std::map<std::vector<Vertex>, std::size_t> grouped;
    std::size_t always = 0;
    for (const auto & f : h.hyperedges()) {
        if (f.size() == 1)
            ++always;
        else
            ++grouped[f];
    }
    std::vector<std::pair<std::vector<Vertex>, std::size_t>> distinct(grouped.begin(), grouped.end());

    // histogram[k]: assignments with exactly k monochromatic non-singleton hyperedges.
    std::vector<unsigned long long> histogram(h.hyperedge_count() + 1, 0);
    std::vector<std::size_t> sigma(n, 0);
    while (true) {
        std::size_t mono = 0;
        for (const auto & [f, mult] : distinct) {
            bool same = true;
            for (std::size_t i = 1; i < f.size() && same; ++i)
                same = sigma[f[i]] == sigma[f[0]];
            if (same)
                mono += mult;
        }
        ++histogram[mono];

        std::size_t i = 0;
        while (i < n && ++sigma[i] == params.q)
            sigma[i++] = 0;
        if (i == n)
            break;
    }

    Rational factor = 1 + params.gamma;
    Rational total = 0;
    Rational power = pow(factor, static_cast<long>(always));
    for (std::size_t k = 0; k < histogram.size(); ++k) {
        if (histogram[k] != 0)
            total += Rational(Integer(std::to_string(histogram[k]))) * power;
        power *= factor;
    }
    return total;
}

auto random_cluster_oracle(const Graph & g, const PottsParams & params) -> Rational
{
    check_params(params);
    auto m = g.edge_count();
    auto cap = enumeration_cap(1ULL << 24);
    if (m >= 63 || (1ULL << m) > cap)
        throw CapacityError(module, "2^" + std::to_string(m) + " edge subsets exceed the enumeration cap");

    // tally[a][c]: subsets with a edges and c components.
    auto n = g.vertex_count();
    std::vector<std::vector<unsigned long long>> tally(m + 1, std::vector<unsigned long long>(n + 1, 0));
    for (unsigned long long mask = 0; mask < (1ULL << m); ++mask) {
        UnionFind uf(n);
        std::size_t components = n, size = 0;
        for (std::size_t e = 0; e < m; ++e)
            if (mask >> e & 1) {
                ++size;
                if (uf.unite(g.edges()[e].u, g.edges()[e].v))
                    --components;
            }
        ++tally[size][components];
    }

    Rational total = 0;
    for (std::size_t a = 0; a <= m; ++a)
        for (std::size_t c = 0; c <= n; ++c)
            if (tally[a][c] != 0)
                total += Rational(Integer(std::to_string(tally[a][c]))) * pow(params.gamma, static_cast<long>(a))
                        * Rational(pow(Integer(params.q), c));
    return total;
}

auto count_proper_colourings(const Graph & g, unsigned long q) -> Integer
{
    if (! g.is_bipartite())
        throw PreconditionError(module, "count_proper_colourings needs a bipartite graph");
    return count_hom(g, complete_graph(q));
}

auto reduce_potts_to_bqcol(const Graph & g, unsigned long q) -> BqcolReduction
{
    if (q <= 2)
        throw PreconditionError(module, "the colouring reduction needs q > 2");
    return BqcolReduction{two_stretch(g), pow(Integer(q - 2), g.edge_count()), Rational(1, q - 2)};
}

}
