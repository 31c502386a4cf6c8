#include "homred/graph.hpp"
#include "homred/error.hpp"
#include "homred/text_format.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace homred {

namespace
{
    const std::string module = "graph_core";

    auto compute_bipartition(std::size_t n, const std::vector<std::vector<Vertex>> & adjacency)
        -> std::optional<Bipartition>
    {
        Bipartition result;
        result.side.assign(n, -1);
        for (Vertex start = 0; start < n; ++start) {
            if (result.side[start] != -1)
                continue;
            result.side[start] = 0;
            std::queue<Vertex> queue;
            queue.push(start);
            while (! queue.empty()) {
                auto v = queue.front();
                queue.pop();
                for (auto u : adjacency[v]) {
                    if (result.side[u] == -1) {
                        result.side[u] = 1 - result.side[v];
                        queue.push(u);
                    }
                    else if (result.side[u] == result.side[v])
                        return std::nullopt;
                }
            }
        }
        for (Vertex v = 0; v < n; ++v)
            (result.side[v] == 0 ? result.left : result.right).push_back(v);
        return result;
    }
}

Graph::Graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>> & edges) :
    n_(n),
    adjacency_(n)
{
    std::set<Edge> seen;
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a >= n || b >= n)
            throw PreconditionError(module, "edge (" + std::to_string(a) + "," + std::to_string(b)
                    + ") has a vertex outside [0," + std::to_string(n) + ")");
        if (a == b)
            throw PreconditionError(module, "self-loop at vertex " + std::to_string(a));
        Edge e{std::min(a, b), std::max(a, b)};
        if (! seen.insert(e).second)
            throw PreconditionError(module, "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        edges_.push_back(e);
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto & list : adjacency_)
        std::sort(list.begin(), list.end());
    bipartition_ = compute_bipartition(n_, adjacency_);
}

auto Graph::adjacent(Vertex u, Vertex v) const -> bool
{
    const auto & list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

Hypergraph::Hypergraph(std::size_t n, std::vector<std::vector<Vertex>> hyperedges) :
    n_(n),
    hyperedges_(std::move(hyperedges))
{
    for (auto & f : hyperedges_) {
        if (f.empty())
            throw PreconditionError(module, "empty hyperedge");
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end())
            throw PreconditionError(module, "hyperedge repeats a vertex");
        if (f.back() >= n_)
            throw PreconditionError(module, "hyperedge vertex " + std::to_string(f.back()) + " out of range");
    }
}

auto Hypergraph::rank() const -> std::size_t
{
    std::size_t t = 0;
    for (const auto & f : hyperedges_)
        t = std::max(t, f.size());
    return t;
}

auto TargetTree::at(const std::string & label) const -> Vertex
{
    auto it = labels.find(label);
    if (it == labels.end())
        throw PreconditionError(module, "target tree has no vertex labelled '" + label + "'");
    return it->second;
}

auto path_graph(std::size_t n) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v + 1 < n; ++v)
        edges.emplace_back(v, v + 1);
    return Graph(n, edges);
}

auto star_graph(std::size_t leaves) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 1; v <= leaves; ++v)
        edges.emplace_back(0, v);
    return Graph(leaves + 1, edges);
}

auto complete_graph(std::size_t n) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            edges.emplace_back(u, v);
    return Graph(n, edges);
}

auto complete_bipartite_graph(std::size_t a, std::size_t b) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex u = 0; u < a; ++u)
        for (Vertex v = 0; v < b; ++v)
            edges.emplace_back(u, a + v);
    return Graph(a + b, edges);
}

auto cycle_graph(std::size_t n) -> Graph
{
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex v = 0; v < n; ++v)
        edges.emplace_back(v, (v + 1) % n);
    return Graph(n, edges);
}

auto junction_tree(std::size_t q) -> TargetTree
{
    // w = 0, c_i = 2i - 1, c'_i = 2i.
    TargetTree tree{TreeKind::Junction, {}, {}};
    std::vector<std::pair<Vertex, Vertex>> edges;
    tree.labels["w"] = 0;
    for (std::size_t i = 1; i <= q; ++i) {
        Vertex c = 2 * i - 1, cp = 2 * i;
        tree.labels["c" + std::to_string(i)] = c;
        tree.labels["c'" + std::to_string(i)] = cp;
        edges.emplace_back(c, cp);
        edges.emplace_back(cp, 0);
    }
    tree.graph = Graph(2 * q + 1, edges);
    return tree;
}

auto j3_star_tree() -> TargetTree
{
    TargetTree tree{TreeKind::J3Star, {}, {}};
    std::vector<std::pair<Vertex, Vertex>> edges;
    Vertex next = 0;
    auto add = [&](const std::string & label) {
        tree.labels[label] = next;
        return next++;
    };
    auto link = [&](const std::string & a, const std::string & b) {
        edges.emplace_back(tree.labels.at(a), tree.labels.at(b));
    };
    auto s = [](auto... parts) {
        std::string out;
        ((out += (out.empty() ? "" : "."), out += std::to_string(parts)), ...);
        return out;
    };

    add("w");

    add("x0");
    add("x1");
    for (int i = 1; i <= 5; ++i)
        add("x2." + s(i));

    add("y0");
    add("y1");
    for (int i = 1; i <= 4; ++i)
        add("y2." + s(i));
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 3; ++j)
            add("y3." + s(i, j));

    add("z0");
    add("z1");
    for (int i = 1; i <= 3; ++i)
        add("z2." + s(i));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            add("z3." + s(i, j));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 2; ++k)
                add("z4." + s(i, j, k));

    link("w", "x0");
    link("w", "y0");
    link("w", "z0");

    link("x0", "x1");
    for (int i = 1; i <= 5; ++i)
        link("x1", "x2." + s(i));

    link("y0", "y1");
    for (int i = 1; i <= 4; ++i) {
        link("y1", "y2." + s(i));
        for (int j = 1; j <= 3; ++j)
            link("y2." + s(i), "y3." + s(i, j));
    }

    link("z0", "z1");
    for (int i = 1; i <= 3; ++i) {
        link("z1", "z2." + s(i));
        for (int j = 1; j <= 3; ++j) {
            link("z2." + s(i), "z3." + s(i, j));
            for (int k = 1; k <= 2; ++k)
                link("z3." + s(i, j), "z4." + s(i, j, k));
        }
    }

    tree.graph = Graph(next, edges);
    return tree;
}

auto build_target_tree(const TreeSpec & spec) -> TargetTree
{
    switch (spec.kind) {
        case TreeKind::Path: {
            if (spec.parameter < 1)
                throw PreconditionError(module, "Path(n) needs n >= 1");
            TargetTree tree{TreeKind::Path, path_graph(spec.parameter), {}};
            for (Vertex v = 0; v < spec.parameter; ++v)
                tree.labels["p" + std::to_string(v + 1)] = v;
            return tree;
        }
        case TreeKind::Star: {
            if (spec.parameter < 1)
                throw PreconditionError(module, "Star(n) needs n >= 1");
            TargetTree tree{TreeKind::Star, star_graph(spec.parameter), {}};
            tree.labels["centre"] = 0;
            for (Vertex v = 1; v <= spec.parameter; ++v)
                tree.labels["leaf" + std::to_string(v)] = v;
            return tree;
        }
        case TreeKind::Junction:
            if (spec.parameter < 1)
                throw PreconditionError(module, "Junction(q) needs q >= 1");
            return junction_tree(spec.parameter);
        case TreeKind::J3Star:
            return j3_star_tree();
        case TreeKind::Custom: {
            if (! spec.custom)
                throw PreconditionError(module, "Custom target needs a graph");
            if (! is_tree(*spec.custom))
                throw PreconditionError(module, "Custom target is not a tree");
            TargetTree tree{TreeKind::Custom, *spec.custom, {}};
            for (Vertex v = 0; v < spec.custom->vertex_count(); ++v)
                tree.labels[std::to_string(v)] = v;
            return tree;
        }
    }
    throw PreconditionError(module, "unknown tree kind");
}

auto pattern_graph(Pattern pattern) -> Graph
{
    switch (pattern) {
        case Pattern::P4:
            return path_graph(4);
        case Pattern::J3:
            return Graph(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
    }
    throw PreconditionError(module, "unknown pattern");
}

namespace
{
    struct InducedSearch
    {
        const Graph & host;
        const Graph & pattern;
        std::vector<Vertex> order;           // pattern vertices in search order
        std::vector<std::optional<Vertex>> image;
        std::vector<bool> used;

        auto extend(std::size_t depth) -> bool
        {
            if (depth == order.size())
                return true;
            auto p = order[depth];

            // Candidates: neighbours of an already-mapped pattern neighbour
            // when one exists, otherwise every host vertex.
            const std::vector<Vertex> * candidates = nullptr;
            std::vector<Vertex> all;
            for (auto q : pattern.neighbours(p))
                if (image[q]) {
                    candidates = &host.neighbours(*image[q]);
                    break;
                }
            if (! candidates) {
                all.resize(host.vertex_count());
                std::iota(all.begin(), all.end(), Vertex{0});
                candidates = &all;
            }

            for (auto h : *candidates) {
                if (used[h])
                    continue;
                bool ok = true;
                for (std::size_t d = 0; d < depth && ok; ++d) {
                    auto q = order[d];
                    if (pattern.adjacent(p, q) != host.adjacent(h, *image[q]))
                        ok = false;
                }
                if (! ok)
                    continue;
                image[p] = h;
                used[h] = true;
                if (extend(depth + 1))
                    return true;
                used[h] = false;
                image[p].reset();
            }
            return false;
        }
    };
}

auto find_induced(const Graph & host, const Graph & pattern) -> std::optional<std::vector<Vertex>>
{
    if (pattern.vertex_count() > host.vertex_count())
        return std::nullopt;
    if (pattern.vertex_count() == 0)
        return std::vector<Vertex>{};

    // Search order: BFS over the pattern from vertex 0, then any leftovers,
    // so that most vertices are constrained by a mapped neighbour.
    std::vector<Vertex> order;
    std::vector<bool> queued(pattern.vertex_count(), false);
    for (Vertex root = 0; root < pattern.vertex_count(); ++root) {
        if (queued[root])
            continue;
        std::queue<Vertex> queue;
        queue.push(root);
        queued[root] = true;
        while (! queue.empty()) {
            auto v = queue.front();
            queue.pop();
            order.push_back(v);
            for (auto u : pattern.neighbours(v))
                if (! queued[u]) {
                    queued[u] = true;
                    queue.push(u);
                }
        }
    }

    InducedSearch search{host, pattern, order,
        std::vector<std::optional<Vertex>>(pattern.vertex_count()), std::vector<bool>(host.vertex_count(), false)};
    if (! search.extend(0))
        return std::nullopt;
    std::vector<Vertex> result;
    for (auto & v : search.image)
        result.push_back(*v);
    return result;
}

auto contains_induced(const Graph & host, Pattern pattern) -> bool
{
    return find_induced(host, pattern_graph(pattern)).has_value();
}

auto to_string(TreeClass c) -> std::string
{
    switch (c) {
        case TreeClass::Star: return "Star";
        case TreeClass::BisEquivalent: return "BisEquivalent";
        case TreeClass::ContainsJ3: return "ContainsJ3";
    }
    return "?";
}

auto is_tree(const Graph & g) -> bool
{
    return g.vertex_count() >= 1 && g.edge_count() + 1 == g.vertex_count() && is_connected(g);
}

auto classify_tree(const Graph & g) -> TreeClass
{
    if (! is_tree(g))
        throw PreconditionError(module, "classify_tree: input is not a tree");
    auto n = g.vertex_count();
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) + 1 == n)
            return TreeClass::Star;
    if (n <= 2)
        return TreeClass::Star;
    if (contains_induced(g, Pattern::J3))
        return TreeClass::ContainsJ3;
    return TreeClass::BisEquivalent;
}

auto two_stretch(const Graph & g) -> Stretch
{
    auto n = g.vertex_count();
    std::vector<std::pair<Vertex, Vertex>> edges;
    Stretch result;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        Vertex mid = n + e;
        result.midpoint.push_back(mid);
        edges.emplace_back(g.edges()[e].u, mid);
        edges.emplace_back(mid, g.edges()[e].v);
    }
    result.graph = Graph(n + g.edge_count(), edges);
    return result;
}

auto components(const Graph & g) -> std::vector<std::vector<Vertex>>
{
    std::vector<std::vector<Vertex>> result;
    std::vector<bool> seen(g.vertex_count(), false);
    for (Vertex start = 0; start < g.vertex_count(); ++start) {
        if (seen[start])
            continue;
        std::vector<Vertex> component;
        std::queue<Vertex> queue;
        queue.push(start);
        seen[start] = true;
        while (! queue.empty()) {
            auto v = queue.front();
            queue.pop();
            component.push_back(v);
            for (auto u : g.neighbours(v))
                if (! seen[u]) {
                    seen[u] = true;
                    queue.push(u);
                }
        }
        std::sort(component.begin(), component.end());
        result.push_back(std::move(component));
    }
    return result;
}

auto is_connected(const Graph & g) -> bool
{
    return g.vertex_count() > 0 && components(g).size() == 1;
}

auto induced_subgraph(const Graph & g, const std::vector<Vertex> & vertices) -> Graph
{
    std::vector<std::size_t> position(g.vertex_count(), SIZE_MAX);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        position[vertices[i]] = i;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto & e : g.edges())
        if (position[e.u] != SIZE_MAX && position[e.v] != SIZE_MAX)
            edges.emplace_back(position[e.u], position[e.v]);
    return Graph(vertices.size(), edges);
}

auto parse_graph(std::string_view text) -> Graph
{
    auto records = tokenize_records(text);
    if (records.empty())
        throw ParseError(module, 0, "empty graph file");
    const auto & header = records.front();
    if (header.fields.size() != 3 || header.fields[0] != "graph")
        throw ParseError(module, header.line, "expected 'graph <n> <m>'");
    auto n = parse_index(module, header, 1);
    auto m = parse_index(module, header, 2);
    if (records.size() - 1 != m)
        throw ParseError(module, header.line, "header announces " + std::to_string(m) + " edges, file has "
                + std::to_string(records.size() - 1));

    std::set<Edge> seen;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto & r = records[i];
        if (r.fields.size() != 3 || r.fields[0] != "e")
            throw ParseError(module, r.line, "expected 'e <u> <v>'");
        auto u = parse_index(module, r, 1);
        auto v = parse_index(module, r, 2);
        if (u >= n || v >= n)
            throw ParseError(module, r.line, "vertex index >= n (" + std::to_string(n) + ")");
        if (u == v)
            throw ParseError(module, r.line, "self-loop at vertex " + std::to_string(u));
        if (! seen.insert(Edge{std::min(u, v), std::max(u, v)}).second)
            throw ParseError(module, r.line, "duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        edges.emplace_back(u, v);
    }
    return Graph(n, edges);
}

auto parse_hypergraph(std::string_view text) -> Hypergraph
{
    auto records = tokenize_records(text);
    if (records.empty())
        throw ParseError(module, 0, "empty hypergraph file");
    const auto & header = records.front();
    if (header.fields.size() != 3 || header.fields[0] != "hypergraph")
        throw ParseError(module, header.line, "expected 'hypergraph <n> <m>'");
    auto n = parse_index(module, header, 1);
    auto m = parse_index(module, header, 2);
    if (records.size() - 1 != m)
        throw ParseError(module, header.line, "header announces " + std::to_string(m) + " hyperedges, file has "
                + std::to_string(records.size() - 1));

    std::vector<std::vector<Vertex>> hyperedges;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto & r = records[i];
        if (r.fields.size() < 2 || r.fields[0] != "h")
            throw ParseError(module, r.line, "expected 'h <k> <v1> ... <vk>'");
        auto k = parse_index(module, r, 1);
        if (k == 0)
            throw ParseError(module, r.line, "empty hyperedge");
        if (r.fields.size() != k + 2)
            throw ParseError(module, r.line, "hyperedge announces " + std::to_string(k) + " vertices");
        std::vector<Vertex> f;
        for (std::size_t j = 0; j < k; ++j) {
            auto v = parse_index(module, r, j + 2);
            if (v >= n)
                throw ParseError(module, r.line, "vertex index >= n (" + std::to_string(n) + ")");
            f.push_back(v);
        }
        auto sorted = f;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw ParseError(module, r.line, "hyperedge repeats a vertex");
        hyperedges.push_back(std::move(f));
    }
    return Hypergraph(n, std::move(hyperedges));
}

auto write_graph(const Graph & g) -> std::string
{
    std::ostringstream out;
    out << "graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto & e : g.edges())
        out << "e " << e.u << ' ' << e.v << '\n';
    return out.str();
}

auto write_hypergraph(const Hypergraph & h) -> std::string
{
    std::ostringstream out;
    out << "hypergraph " << h.vertex_count() << ' ' << h.hyperedge_count() << '\n';
    for (const auto & f : h.hyperedges()) {
        out << "h " << f.size();
        for (auto v : f)
            out << ' ' << v;
        out << '\n';
    }
    return out.str();
}

}
