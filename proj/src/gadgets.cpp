#include "homred/gadgets.hpp"
#include "homred/error.hpp"
#include "homred/potts.hpp"

#include <algorithm>
#include <numeric>

namespace homred {

namespace
{
    const std::string module = "hardness_gadgets";

    const std::array<const char *, 7> j3_roles = {"w", "x0", "x1", "y0", "y1", "z0", "z1"};

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

        void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

    private:
        std::vector<std::size_t> parent_;
    };

    void check_cut_input(const Graph & g, const std::array<Vertex, 3> & t)
    {
        for (auto v : t)
            if (v >= g.vertex_count())
                throw PreconditionError(module, "terminal " + std::to_string(v) + " out of range");
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
            throw PreconditionError(module, "terminals must be distinct");
        if (! is_connected(g))
            throw PreconditionError(module, "the cut instance graph must be connected");
    }

    void check_cut(const CutInstance & cut)
    {
        check_cut_input(cut.graph, cut.terminals);
        if (cut.b > cut.graph.edge_count())
            throw PreconditionError(module, "b exceeds the number of edges");
    }

    auto indicator(std::size_t colours, const std::vector<Vertex> & support) -> std::vector<Rational>
    {
        std::vector<Rational> row(colours, Rational(0));
        for (auto c : support)
            row[c] = 1;
        return row;
    }

    void pin(EdgeWeightedInstance & instance, Vertex v, Vertex colour)
    {
        instance.vertex_weights[v] = indicator(instance.colours, {colour});
    }

    // Vertex ids of the materialised G' part: original vertices, then the s
    // midpoint copies of each edge, (e, i) -> n + e s + i.
    auto midpoint_copies(const Graph & g, unsigned long s, std::vector<std::pair<Vertex, Vertex>> & edges) -> std::size_t
    {
        auto n = g.vertex_count();
        for (std::size_t e = 0; e < g.edge_count(); ++e)
            for (unsigned long i = 0; i < s; ++i) {
                Vertex mid = n + e * s + i;
                edges.emplace_back(g.edges()[e].u, mid);
                edges.emplace_back(g.edges()[e].v, mid);
            }
        return n + g.edge_count() * s;
    }

    struct CutClasses
    {
        Rational minimum;
        Rational total;
    };

    // Sums prod_e table(sigma(u), sigma(v))^s over sigma: V(G) -> palette with
    // terminal i fixed to palette[i], separating the sigmas whose bichromatic
    // edges form a minimum cut.
    auto classify_cuts(const CutInstance & cut, const PairTable & table, unsigned long s,
            const std::array<Vertex, 3> & palette) -> CutClasses
    {
        const auto & g = cut.graph;
        auto n = g.vertex_count();
        std::vector<Vertex> free;
        for (Vertex v = 0; v < n; ++v)
            if (std::find(cut.terminals.begin(), cut.terminals.end(), v) == cut.terminals.end())
                free.push_back(v);

        auto cap = enumeration_cap(100'000'000ULL);
        unsigned long long total_assignments = 1;
        for (std::size_t i = 0; i < free.size(); ++i) {
            if (total_assignments > cap / 3)
                throw CapacityError(module, "3^" + std::to_string(free.size()) + " cut colourings exceed the enumeration cap");
            total_assignments *= 3;
        }

        std::vector<std::size_t> sigma(n);
        for (std::size_t i = 0; i < 3; ++i)
            sigma[cut.terminals[i]] = i;
        std::vector<std::size_t> digit(free.size(), 0);
        CutClasses out{0, 0};
        while (true) {
            for (std::size_t i = 0; i < free.size(); ++i)
                sigma[free[i]] = digit[i];
            Rational product = 1;
            std::vector<std::size_t> bichromatic;
            for (std::size_t e = 0; e < g.edge_count() && product != 0; ++e) {
                auto a = sigma[g.edges()[e].u], b = sigma[g.edges()[e].v];
                if (a != b)
                    bichromatic.push_back(e);
                product *= pow(table.at(palette[a], palette[b]), static_cast<long>(s));
            }
            if (product != 0) {
                if (! separates_terminals(g, cut.terminals, bichromatic))
                    throw Error(module, "bichromatic edge set is not a multiterminal cut");
                out.total += product;
                if (bichromatic.size() == cut.b)
                    out.minimum += product;
            }
            std::size_t i = 0;
            while (i < digit.size() && ++digit[i] == 3)
                digit[i++] = 0;
            if (i == digit.size())
                break;
        }
        return out;
    }

    auto palette_of(const J3Embedding & emb) -> std::array<Vertex, 3>
    {
        return {emb.at("x0"), emb.at("y0"), emb.at("z0")};
    }

    auto firsts_holds(unsigned long q, std::size_t size, unsigned long s) -> bool
    {
        Integer lhs = 8 * Integer(q) * pow(Integer(q + 1), size) * pow(Integer(2), s);
        return lhs <= pow(Integer(q), s);
    }

    auto uniform_rhs(const Hypergraph & h, unsigned long q, const Rational & gamma) -> Rational
    {
        auto m = h.hyperedge_count();
        auto t = h.rank();
        auto padding = m * (t == 0 ? 0 : t - 1);
        return 4 * Rational(pow(Integer(q), h.vertex_count() + padding)) * pow(Rational(1 + gamma), static_cast<long>(m));
    }

    auto eq_r_holds(const Integer & bound, unsigned long r) -> bool
    {
        return pow(Integer(46), r) >= bound * pow(Integer(40), r);
    }

    auto eq_r_bound(std::size_t exponent, std::size_t target_vertices) -> Integer
    {
        return 8 * pow(Integer(target_vertices), exponent);
    }

    auto gadget_factor(const TargetTree & star) -> Integer
    {
        Integer x = walk_profile(star.graph, star.at("x1"), 3).walks[0];
        Integer y = walk_profile(star.graph, star.at("y1"), 3).walks[1];
        Integer z = walk_profile(star.graph, star.at("z1"), 3).walks[2];
        return x * y * z;
    }

    auto star_palette(const TargetTree & star) -> std::array<Vertex, 3>
    {
        return {star.at("x0"), star.at("y0"), star.at("z0")};
    }
}

auto separates_terminals(const Graph & g, const std::array<Vertex, 3> & terminals, const std::vector<std::size_t> & cut)
    -> bool
{
    std::vector<bool> removed(g.edge_count(), false);
    for (auto e : cut)
        removed.at(e) = true;
    UnionFind uf(g.vertex_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (! removed[e])
            uf.unite(g.edges()[e].u, g.edges()[e].v);
    auto a = uf.find(terminals[0]), b = uf.find(terminals[1]), c = uf.find(terminals[2]);
    return a != b && a != c && b != c;
}

auto multiterminal_cuts(const Graph & g, const std::array<Vertex, 3> & terminals) -> CutInstance
{
    check_cut_input(g, terminals);
    auto m = g.edge_count();
    auto cap = enumeration_cap(1ULL << 24);
    if (m >= 63 || (1ULL << m) > cap)
        throw CapacityError(module, "2^" + std::to_string(m) + " edge subsets exceed the enumeration cap");

    for (std::size_t k = 0; k <= m; ++k) {
        std::vector<bool> chosen(m, false);
        std::fill(chosen.begin(), chosen.begin() + k, true);
        Integer count = 0;
        std::vector<std::size_t> cut;
        do {
            cut.clear();
            for (std::size_t e = 0; e < m; ++e)
                if (chosen[e])
                    cut.push_back(e);
            if (separates_terminals(g, terminals, cut))
                ++count;
        } while (std::prev_permutation(chosen.begin(), chosen.end()));
        if (count > 0)
            return CutInstance{g, terminals, k, count};
    }
    throw Error(module, "no multiterminal cut found");
}

auto find_induced_j3(const Graph & h) -> J3Embedding
{
    auto embedding = find_induced(h, pattern_graph(Pattern::J3));
    if (! embedding)
        throw PreconditionError(module, "target has no induced J3");
    J3Embedding out;
    for (std::size_t i = 0; i < j3_roles.size(); ++i)
        out[j3_roles[i]] = (*embedding)[i];
    return out;
}

auto to_string(ReductionKind kind) -> std::string
{
    switch (kind) {
    case ReductionKind::CutToWhom:
        return "cut-to-whom";
    case ReductionKind::PottsToJq:
        return "potts-to-jq";
    case ReductionKind::JqToHyperPotts:
        return "jq-to-hyperpotts";
    case ReductionKind::Uniformize:
        return "uniformize";
    case ReductionKind::CutToJ3Star:
        return "cut-to-j3star";
    }
    return "unknown";
}

auto parse_reduction_kind(std::string_view text) -> ReductionKind
{
    for (auto kind : {ReductionKind::CutToWhom, ReductionKind::PottsToJq, ReductionKind::JqToHyperPotts,
                 ReductionKind::Uniformize, ReductionKind::CutToJ3Star})
        if (to_string(kind) == text)
            return kind;
    throw PreconditionError(module, "unknown reduction kind '" + std::string(text) + "'");
}

auto build_cut_to_whom(const CutInstance & cut, const Graph & h, const J3Embedding & embedding, const GadgetOptions & options)
    -> ReductionCertificate
{
    check_cut(cut);
    if (! is_tree(h))
        throw PreconditionError(module, "target must be a tree");
    std::vector<Vertex> roles;
    for (const auto * role : j3_roles) {
        auto it = embedding.find(role);
        if (it == embedding.end() || it->second >= h.vertex_count())
            throw PreconditionError(module, std::string("embedding lacks role ") + role);
        roles.push_back(it->second);
    }
    if (! (induced_subgraph(h, roles) == pattern_graph(Pattern::J3)))
        throw PreconditionError(module, "embedding does not induce J3");

    const auto & g = cut.graph;
    auto n = g.vertex_count(), m = g.edge_count(), colours = h.vertex_count();
    unsigned long s = options.s.value_or(2 + m + 2 * n);
    if (s == 0)
        throw PreconditionError(module, "s must be positive");

    std::vector<Vertex> mid_colours = {embedding.at("w"), embedding.at("x1"), embedding.at("y1"), embedding.at("z1")};
    std::vector<bool> allowed(colours, false);
    for (auto c : mid_colours)
        allowed[c] = true;
    auto palette = palette_of(embedding);

    std::vector<std::vector<Rational>> core_rows;
    for (Vertex v = 0; v < n; ++v) {
        auto t = std::find(cut.terminals.begin(), cut.terminals.end(), v);
        if (t != cut.terminals.end())
            core_rows.push_back(indicator(colours, {palette[t - cut.terminals.begin()]}));
        else
            core_rows.push_back(indicator(colours, {palette.begin(), palette.end()}));
    }

    ReductionCertificate cert;
    cert.kind = ReductionKind::CutToWhom;
    cert.source.cut = cut;
    cert.source.target = h;
    cert.source.embedding = embedding;
    cert.source.options = options;

    std::vector<std::pair<Vertex, Vertex>> edges;
    auto total = midpoint_copies(g, s, edges);
    cert.graph = Graph(total, edges);
    WeightTable weights{colours, core_rows};
    weights.rows.resize(total, indicator(colours, mid_colours));
    cert.weights = weights;

    if (options.materialise)
        cert.structured = EdgeWeightedInstance::from_graph(*cert.graph, h, weights);
    else {
        EdgeWeightedInstance core(n, colours);
        core.vertex_weights = core_rows;
        auto table = midpoint_table(h, allowed);
        for (const auto & e : g.edges())
            core.add_edge(e.u, e.v, table, s);
        cert.structured = std::move(core);
    }

    cert.constants["s"] = s;
    cert.scale = Rational(pow(Integer(2), s * (m - cut.b)));
    cert.slack = Rational(1, 4);
    return cert;
}

auto build_potts_to_jq(const Graph & g, unsigned long q, const GadgetOptions & options) -> ReductionCertificate
{
    if (q <= 2)
        throw PreconditionError(module, "potts-to-jq needs q > 2");
    if (g.vertex_count() == 0 || ! is_connected(g))
        throw PreconditionError(module, "potts-to-jq needs a connected graph");

    auto n = g.vertex_count(), m = g.edge_count();
    unsigned long s = 0;
    if (options.s)
        s = *options.s;
    else
        while (! firsts_holds(q, n + m, s))
            ++s;

    auto jq = junction_tree(q);
    auto colours = jq.graph.vertex_count();
    auto w = jq.at("w");
    auto stretch = two_stretch(g);

    // G'': the 2-stretch, v0 joined to vertex 0, and s leaves on v0.
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto & e : stretch.graph.edges())
        edges.emplace_back(e.u, e.v);
    Vertex v0 = n + m;
    edges.emplace_back(0, v0);
    for (unsigned long i = 1; i <= s; ++i)
        edges.emplace_back(v0, v0 + i);

    ReductionCertificate cert;
    cert.kind = ReductionKind::PottsToJq;
    cert.source.graph = g;
    cert.source.q = q;
    cert.source.options = options;
    cert.graph = Graph(v0 + 1 + s, edges);

    if (options.materialise) {
        cert.structured = EdgeWeightedInstance::from_graph(*cert.graph, jq.graph);
        cert.typical[v0] = w;
    }
    else {
        EdgeWeightedInstance core(n, colours);
        std::vector<bool> all(colours, true);
        auto mid = midpoint_table(jq.graph, all);
        auto adj = adjacency_table(jq.graph);
        for (const auto & e : g.edges())
            core.add_edge(e.u, e.v, mid);
        auto apex = core.add_vertex({});
        core.add_edge(0, apex, adj);
        if (s > 0) {
            auto leaf = core.add_vertex({}, s);
            core.add_edge(apex, leaf, adj);
        }
        cert.structured = std::move(core);
        cert.typical[apex] = w;
    }

    cert.constants["s"] = s;
    cert.scale = Rational(pow(Integer(q), s));
    cert.slack = Rational(1, 4);
    return cert;
}

auto build_jq_to_hyperpotts(const Graph & b, Side side) -> Hypergraph
{
    if (! b.is_bipartite())
        throw PreconditionError(module, "jq-to-hyperpotts needs a bipartite graph");
    if (! is_connected(b))
        throw PreconditionError(module, "jq-to-hyperpotts needs a connected graph");
    const auto & parts = *b.bipartition();
    const auto & u_side = side == Side::Left ? parts.left : parts.right;
    const auto & v_side = side == Side::Left ? parts.right : parts.left;
    if (u_side.empty())
        throw PreconditionError(module, "the chosen side is empty");

    std::vector<std::size_t> index(b.vertex_count(), 0);
    for (std::size_t i = 0; i < u_side.size(); ++i)
        index[u_side[i]] = i;
    std::vector<std::vector<Vertex>> hyperedges;
    for (auto v : v_side) {
        std::vector<Vertex> f;
        for (auto u : b.neighbours(v))
            f.push_back(index[u]);
        std::sort(f.begin(), f.end());
        hyperedges.push_back(std::move(f));
    }
    return Hypergraph(u_side.size(), std::move(hyperedges));
}

auto jq_side_count(const Graph & b, unsigned long q, Side side) -> Integer
{
    if (! b.is_bipartite())
        throw PreconditionError(module, "jq_side_count needs a bipartite graph");
    auto jq = junction_tree(q);
    auto colours = jq.graph.vertex_count();
    std::vector<Vertex> primes;
    for (unsigned long i = 1; i <= q; ++i)
        primes.push_back(jq.at("c'" + std::to_string(i)));

    auto weights = WeightTable::uniform(b.vertex_count(), colours);
    const auto & parts = *b.bipartition();
    for (auto u : side == Side::Left ? parts.left : parts.right)
        weights.rows[u] = indicator(colours, primes);
    return to_integer(count_whom(b, jq.graph, weights));
}

auto certify_jq_to_hyperpotts(const Graph & b, unsigned long q, Side side) -> ReductionCertificate
{
    if (q < 1)
        throw PreconditionError(module, "q must be positive");
    ReductionCertificate cert;
    cert.kind = ReductionKind::JqToHyperPotts;
    cert.source.graph = b;
    cert.source.q = q;
    cert.source.gamma = 1;
    cert.source.side = side;
    cert.hypergraph = build_jq_to_hyperpotts(b, side);
    return cert;
}

auto uniformize(const Hypergraph & h, unsigned long q, const Rational & gamma) -> ReductionCertificate
{
    if (gamma <= 0)
        throw PreconditionError(module, "uniformize needs gamma > 0");
    if (q < 1)
        throw PreconditionError(module, "q must be positive");
    for (const auto & f : h.hyperedges())
        if (f.empty())
            throw PreconditionError(module, "empty hyperedge");

    auto n = h.vertex_count(), m = h.hyperedge_count(), t = h.rank();
    Rational factor = 1 + gamma;
    Rational rhs = uniform_rhs(h, q, gamma);
    unsigned long s = 0;
    Rational power = 1;
    while (power < rhs) {
        power *= factor;
        ++s;
    }

    auto pad = [&](std::size_t f, std::size_t i) -> Vertex { return n + f * (t - 1) + (i - 1); };
    std::vector<std::vector<Vertex>> hyperedges;
    for (std::size_t j = 0; j < m; ++j) {
        const auto & f = h.hyperedges()[j];
        auto main = f;
        for (std::size_t i = 1; i <= t - f.size(); ++i)
            main.push_back(pad(j, i));
        hyperedges.push_back(main);
        std::vector<Vertex> anchor = {f.front()};
        for (std::size_t i = 1; i + 1 <= t; ++i)
            anchor.push_back(pad(j, i));
        for (unsigned long c = 0; c < s; ++c)
            hyperedges.push_back(anchor);
    }

    ReductionCertificate cert;
    cert.kind = ReductionKind::Uniformize;
    cert.source.hypergraph = h;
    cert.source.q = q;
    cert.source.gamma = gamma;
    cert.hypergraph = Hypergraph(n + m * (t == 0 ? 0 : t - 1), std::move(hyperedges));
    cert.constants["s"] = s;
    cert.constants["t"] = static_cast<unsigned long>(t);
    cert.scale = pow(factor, static_cast<long>(s * m));
    cert.slack = Rational(1, 4);
    return cert;
}

auto build_cut_to_j3star(const CutInstance & cut, const GadgetOptions & options) -> ReductionCertificate
{
    check_cut(cut);
    const auto & g = cut.graph;
    auto n = g.vertex_count(), m = g.edge_count();
    unsigned long s = options.s.value_or(3 + m + 2 * n);
    if (s == 0)
        throw PreconditionError(module, "s must be positive");

    auto star = j3_star_tree();
    auto colours = star.graph.vertex_count();
    auto exponent = n + s * m + 7;
    auto bound = eq_r_bound(exponent, colours);
    unsigned long r = 0;
    Integer lhs = 1, rhs = bound;
    while (lhs < rhs) {
        lhs *= 46;
        rhs *= 40;
        ++r;
    }
    auto gadget = gadget_factor(star);

    ReductionCertificate cert;
    cert.kind = ReductionKind::CutToJ3Star;
    cert.source.cut = cut;
    cert.source.options = options;

    // G'': G', the apex vertices, then the r pendant 1-, 2- and 3-paths.
    std::vector<std::pair<Vertex, Vertex>> edges;
    auto base = midpoint_copies(g, s, edges);
    Vertex vw = base, vx0 = base + 1, vy0 = base + 2, vz0 = base + 3, vx1 = base + 4, vy1 = base + 5, vz1 = base + 6;
    auto apex_edges = [&](auto && add) {
        add(vw, vx0);
        add(vw, vy0);
        add(vw, vz0);
        add(vx0, vx1);
        add(vy0, vy1);
        add(vz0, vz1);
    };
    apex_edges([&](Vertex a, Vertex b) { edges.emplace_back(a, b); });
    edges.emplace_back(vx1, cut.terminals[0]);
    edges.emplace_back(vy1, cut.terminals[1]);
    edges.emplace_back(vz1, cut.terminals[2]);
    for (Vertex v = 0; v < n; ++v)
        edges.emplace_back(vw, v);
    Vertex next = base + 7;
    std::array<Vertex, 3> roots = {vx1, vy1, vz1};
    for (std::size_t len = 1; len <= 3; ++len)
        for (unsigned long i = 0; i < r; ++i) {
            Vertex prev = roots[len - 1];
            for (std::size_t j = 0; j < len; ++j) {
                edges.emplace_back(prev, next);
                prev = next++;
            }
        }
    cert.graph = Graph(next, edges);

    if (options.materialise) {
        cert.structured = EdgeWeightedInstance::from_graph(*cert.graph, star.graph);
        cert.typical = {{vx1, star.at("x1")}, {vy1, star.at("y1")}, {vz1, star.at("z1")}};
    }
    else {
        EdgeWeightedInstance core(n, colours);
        std::vector<bool> all(colours, true);
        auto mid = midpoint_table(star.graph, all);
        auto adj = adjacency_table(star.graph);
        for (const auto & e : g.edges())
            core.add_edge(e.u, e.v, mid, s);
        Vertex first = core.vertex_count;
        for (int i = 0; i < 7; ++i)
            core.add_vertex({});
        auto shift = [&](Vertex v) { return v - base + first; };
        apex_edges([&](Vertex a, Vertex b) { core.add_edge(shift(a), shift(b), adj); });
        for (std::size_t i = 0; i < 3; ++i)
            core.add_edge(shift(roots[i]), cut.terminals[i], adj);
        for (Vertex v = 0; v < n; ++v)
            core.add_edge(shift(vw), v, adj);
        for (std::size_t len = 1; len <= 3; ++len) {
            Vertex prev = shift(roots[len - 1]);
            for (std::size_t j = 0; j < len; ++j) {
                auto v = core.add_vertex({}, j == 0 ? r : 1);
                core.add_edge(prev, v, adj);
                prev = v;
            }
        }
        cert.typical = {{shift(vx1), star.at("x1")}, {shift(vy1), star.at("y1")}, {shift(vz1), star.at("z1")}};
        cert.structured = std::move(core);
    }

    cert.constants["s"] = s;
    cert.constants["r"] = r;
    cert.constants["r_exponent"] = static_cast<unsigned long>(exponent);
    cert.constants["target_vertices"] = static_cast<unsigned long>(colours);
    cert.constants["gadget"] = gadget;
    cert.scale = Rational(pow(Integer(2), s * (m - cut.b)) * pow(gadget, r));
    cert.slack = Rational(1, 4);
    return cert;
}

auto rebuild_certificate(const ReductionCertificate & cert) -> ReductionCertificate
{
    const auto & src = cert.source;
    auto need = [&](bool present, const char * what) {
        if (! present)
            throw PreconditionError(module, std::string("certificate source lacks ") + what);
    };
    switch (cert.kind) {
    case ReductionKind::CutToWhom:
        need(src.cut && src.target, "cut instance or target");
        return build_cut_to_whom(*src.cut, *src.target, src.embedding, src.options);
    case ReductionKind::PottsToJq:
        need(src.graph.has_value(), "graph");
        return build_potts_to_jq(*src.graph, src.q, src.options);
    case ReductionKind::JqToHyperPotts:
        need(src.graph.has_value(), "graph");
        return certify_jq_to_hyperpotts(*src.graph, src.q, src.side);
    case ReductionKind::Uniformize:
        need(src.hypergraph.has_value(), "hypergraph");
        return uniformize(*src.hypergraph, src.q, src.gamma);
    case ReductionKind::CutToJ3Star:
        need(src.cut.has_value(), "cut instance");
        return build_cut_to_j3star(*src.cut, src.options);
    }
    throw Error(module, "unknown reduction kind");
}

auto evaluate_certificate(ReductionCertificate & cert) -> Rational
{
    Rational z;
    if (cert.kind == ReductionKind::JqToHyperPotts || cert.kind == ReductionKind::Uniformize) {
        if (! cert.hypergraph)
            throw PreconditionError(module, "certificate has no hypergraph");
        z = potts_hypergraph(*cert.hypergraph, PottsParams{cert.source.q, cert.source.gamma});
        cert.counters["Z"] = z;
        return z;
    }

    z = count_ewhom(cert.structured);
    cert.counters["Z"] = z;
    if (! cert.typical.empty()) {
        auto pinned = cert.structured;
        for (const auto & [v, c] : cert.typical)
            pin(pinned, v, c);
        Rational typical = count_ewhom(pinned);
        cert.counters["Z_typical"] = typical;
        cert.counters["Z_atypical"] = z - typical;
    }

    if (cert.kind == ReductionKind::CutToWhom || cert.kind == ReductionKind::CutToJ3Star) {
        const auto & cut = *cert.source.cut;
        auto s = cert.constants.at("s").get_ui();
        CutClasses classes;
        Rational gadget = 1;
        if (cert.kind == ReductionKind::CutToWhom) {
            const auto & h = *cert.source.target;
            const auto & emb = cert.source.embedding;
            std::vector<bool> allowed(h.vertex_count(), false);
            for (const auto * role : {"w", "x1", "y1", "z1"})
                allowed[emb.at(role)] = true;
            classes = classify_cuts(cut, *midpoint_table(h, allowed), s, palette_of(emb));
        }
        else {
            auto star = j3_star_tree();
            std::vector<bool> all(star.graph.vertex_count(), true);
            classes = classify_cuts(cut, *midpoint_table(star.graph, all), s, star_palette(star));
            gadget = Rational(pow(cert.constants.at("gadget"), cert.constants.at("r").get_ui()));
        }
        cert.counters["Z_min_cuts"] = classes.minimum * gadget;
        cert.counters["Z_larger_cuts"] = (classes.total - classes.minimum) * gadget;
    }
    return z;
}

auto independent_oracle(const ReductionCertificate & cert) -> Rational
{
    const auto & src = cert.source;
    switch (cert.kind) {
    case ReductionKind::CutToWhom:
    case ReductionKind::CutToJ3Star:
        return Rational(multiterminal_cuts(src.cut->graph, src.cut->terminals).count);
    case ReductionKind::PottsToJq:
        return potts_graph(*src.graph, PottsParams{src.q, 1});
    case ReductionKind::JqToHyperPotts:
        return Rational(jq_side_count(*src.graph, src.q, src.side));
    case ReductionKind::Uniformize:
        return potts_hypergraph(*src.hypergraph, PottsParams{src.q, src.gamma});
    }
    throw Error(module, "unknown reduction kind");
}

auto constants_minimal(const ReductionCertificate & cert) -> bool
{
    const auto & src = cert.source;
    auto constant = [&](const char * name) -> unsigned long {
        auto it = cert.constants.find(name);
        return it == cert.constants.end() ? 0 : it->second.get_ui();
    };
    switch (cert.kind) {
    case ReductionKind::CutToWhom: {
        const auto & g = src.cut->graph;
        return constant("s") == src.options.s.value_or(2 + g.edge_count() + 2 * g.vertex_count());
    }
    case ReductionKind::PottsToJq: {
        auto s = constant("s");
        if (src.options.s)
            return s == *src.options.s;
        auto size = src.graph->vertex_count() + src.graph->edge_count();
        return firsts_holds(src.q, size, s) && (s == 0 || ! firsts_holds(src.q, size, s - 1));
    }
    case ReductionKind::JqToHyperPotts:
        return cert.constants.empty();
    case ReductionKind::Uniformize: {
        auto s = constant("s");
        Rational factor = 1 + src.gamma;
        Rational rhs = uniform_rhs(*src.hypergraph, src.q, src.gamma);
        return pow(factor, static_cast<long>(s)) >= rhs && (s == 0 || pow(factor, static_cast<long>(s) - 1) < rhs)
                && constant("t") == src.hypergraph->rank();
    }
    case ReductionKind::CutToJ3Star: {
        const auto & g = src.cut->graph;
        auto s = constant("s"), r = constant("r");
        auto target = j3_star_tree().graph.vertex_count();
        auto exponent = g.vertex_count() + s * g.edge_count() + 7;
        auto bound = eq_r_bound(exponent, target);
        return s == src.options.s.value_or(3 + g.edge_count() + 2 * g.vertex_count()) && constant("r_exponent") == exponent
                && constant("target_vertices") == target && eq_r_holds(bound, r) && (r == 0 || ! eq_r_holds(bound, r - 1));
    }
    }
    return false;
}

auto verify_certificate(ReductionCertificate & cert, const Rational & oracle) -> VerificationReport
{
    if (cert.counters.find("Z") == cert.counters.end())
        evaluate_certificate(cert);
    if (cert.scale <= 0)
        throw PreconditionError(module, "certificate scale must be positive");

    VerificationReport report;
    report.value = cert.counters.at("Z");
    report.ratio = report.value / cert.scale;
    report.lower = oracle;
    report.upper = oracle + cert.slack;
    report.checks["sandwich"] = report.lower <= report.ratio && report.ratio <= report.upper;
    if (cert.slack != 0) {
        report.recovered = floor(report.ratio);
        if (is_integer(oracle))
            report.checks["recovered"] = *report.recovered == to_integer(oracle);
    }

    auto has = [&](const char * name) { return cert.counters.find(name) != cert.counters.end(); };
    if (has("Z_min_cuts")) {
        report.checks["minimum_cuts"] = cert.counters.at("Z_min_cuts") == oracle * cert.scale;
        Rational classified = cert.counters.at("Z_min_cuts") + cert.counters.at("Z_larger_cuts");
        const auto & whole = has("Z_typical") ? cert.counters.at("Z_typical") : cert.counters.at("Z");
        report.checks["classification"] = classified == whole;
    }
    if (cert.kind == ReductionKind::PottsToJq && has("Z_typical")) {
        report.checks["typical"] = cert.counters.at("Z_typical") == oracle * cert.scale;
        report.checks["atypical_bound"] = cert.counters.at("Z_atypical") <= cert.scale / 4;
    }
    if (! cert.constants.empty())
        report.checks["constants"] = constants_minimal(cert);

    report.pass = std::all_of(report.checks.begin(), report.checks.end(), [](const auto & c) { return c.second; });
    return report;
}

}
