#include "homred/convex.hpp"
#include "homred/error.hpp"

#include <algorithm>

namespace homred {

namespace
{
    const std::string module = "convex_reduction";

    auto monotone(const std::vector<std::size_t> & f) -> bool
    {
        return std::is_sorted(f.begin(), f.end());
    }

    // Neighbourhood positions of each vertex in `order` as an interval
    // [lo, hi] in the other side's positions; false if some neighbourhood is
    // not an interval.
    auto intervals(const Graph & h, const std::vector<Vertex> & order, const std::vector<std::size_t> & other_pos,
            std::vector<std::size_t> & lo, std::vector<std::size_t> & hi) -> bool
    {
        for (auto v : order) {
            std::vector<std::size_t> p;
            for (auto u : h.neighbours(v))
                p.push_back(other_pos[u]);
            if (p.empty())
                return false;
            std::sort(p.begin(), p.end());
            if (p.back() - p.front() + 1 != p.size())
                return false;
            lo.push_back(p.front());
            hi.push_back(p.back());
        }
        return true;
    }

    class OrderBuilder
    {
    public:
        OrderBuilder(const Graph & h, const std::vector<int> & side) :
            h_(h),
            side_(side),
            alive_(h.vertex_count(), true),
            degree_(h.vertex_count()),
            sequence_(2)
        {
            for (Vertex v = 0; v < h.vertex_count(); ++v)
                degree_[v] = h.degree(v);
        }

        auto qualifies(Vertex u) const -> bool
        {
            if (degree_[u] != 1)
                return false;
            return non_leaf_neighbours(parent(u)).size() <= 1;
        }

        void build(Vertex u, Vertex up)
        {
            auto inner = non_leaf_neighbours(up);
            if (inner.size() > 1)
                throw PreconditionError(module, "no convex ordering: the target has an induced J3");

            if (inner.empty()) {
                sequence_[side_[up]].push_back(up);
                for (auto v : h_.neighbours(up))
                    if (alive_[v] && v != u)
                        sequence_[side_[u]].push_back(v);
                sequence_[side_[u]].push_back(u);
                return;
            }

            auto upp = inner.front();
            std::vector<Vertex> removed;
            for (auto v : h_.neighbours(up))
                if (alive_[v] && v != upp)
                    removed.push_back(v);
            for (auto v : removed) {
                alive_[v] = false;
                --degree_[up];
            }
            build(up, upp);
            for (auto v : removed)
                if (v != u)
                    sequence_[side_[u]].push_back(v);
            sequence_[side_[u]].push_back(u);
        }

        auto parent(Vertex u) const -> Vertex
        {
            for (auto v : h_.neighbours(u))
                if (alive_[v])
                    return v;
            throw PreconditionError(module, "vertex has no parent");
        }

        auto sequence(int s) const -> const std::vector<Vertex> & { return sequence_[s]; }

    private:
        const Graph & h_;
        const std::vector<int> & side_;
        std::vector<bool> alive_;
        std::vector<std::size_t> degree_;
        std::vector<std::vector<Vertex>> sequence_;

        auto non_leaf_neighbours(Vertex v) const -> std::vector<Vertex>
        {
            std::vector<Vertex> out;
            for (auto u : h_.neighbours(v))
                if (alive_[u] && degree_[u] > 1)
                    out.push_back(u);
            return out;
        }
    };
}

auto interval_maps(const Graph & h, const std::vector<Vertex> & left, const std::vector<Vertex> & right)
    -> std::optional<ConvexOrder>
{
    std::vector<std::size_t> pos(h.vertex_count(), 0);
    for (std::size_t i = 0; i < left.size(); ++i)
        pos[left[i]] = i + 1;
    for (std::size_t i = 0; i < right.size(); ++i)
        pos[right[i]] = i + 1;

    ConvexOrder order{left, right, {}, {}, {}, {}};
    if (! intervals(h, left, pos, order.m, order.M) || ! intervals(h, right, pos, order.m_prime, order.M_prime))
        return std::nullopt;
    if (! monotone(order.m) || ! monotone(order.M) || ! monotone(order.m_prime) || ! monotone(order.M_prime))
        return std::nullopt;
    return order;
}

auto is_valid_convex_order(const Graph & h, const ConvexOrder & order) -> bool
{
    const auto & bp = h.bipartition();
    if (! bp)
        return false;
    auto l = order.left, r = order.right;
    std::sort(l.begin(), l.end());
    std::sort(r.begin(), r.end());
    if (l != bp->left || r != bp->right)
        return false;
    auto maps = interval_maps(h, order.left, order.right);
    return maps && maps->m == order.m && maps->M == order.M && maps->m_prime == order.m_prime
            && maps->M_prime == order.M_prime;
}

auto convex_order(const Graph & h) -> ConvexOrder
{
    if (! is_tree(h))
        throw PreconditionError(module, "convex_order needs a tree");
    if (h.vertex_count() < 2)
        throw PreconditionError(module, "convex_order needs at least two vertices");
    if (contains_induced(h, Pattern::J3))
        throw PreconditionError(module, "the target contains an induced J3");

    const auto & side = h.bipartition()->side;
    OrderBuilder builder(h, side);
    for (Vertex u = 0; u < h.vertex_count(); ++u) {
        if (! builder.qualifies(u))
            continue;
        builder.build(u, builder.parent(u));
        auto order = interval_maps(h, builder.sequence(0), builder.sequence(1));
        if (! order)
            throw Error(module, "internal error: ordering is not convex");
        return *order;
    }
    throw Error(module, "internal error: no qualifying leaf");
}

auto reduce_whom_side(const Graph & g, const WeightTable & weights, const Graph & h, const ConvexOrder & order, Side side)
    -> SideReduction
{
    weights.validate(g.vertex_count(), h.vertex_count());
    if (! g.is_bipartite() || ! is_connected(g))
        throw PreconditionError(module, "reduce_whom_side needs a connected bipartite graph");

    // A: colours for G's left side, B: colours for G's right side.
    bool swap = side == Side::Right;
    const auto & a_order = swap ? order.right : order.left;
    const auto & b_order = swap ? order.left : order.right;
    const auto & a_lo = swap ? order.m_prime : order.m;
    const auto & a_hi = swap ? order.M_prime : order.M;
    const auto & b_lo = swap ? order.m : order.m_prime;
    const auto & b_hi = swap ? order.M : order.M_prime;

    SideReduction out;
    auto & csp = out.instance.csp;
    auto & gamma = out.instance.weights;
    const auto & g_side = g.bipartition()->side;

    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        const auto & colours = g_side[v] == 0 ? a_order : b_order;
        auto levels = colours.size();
        out.colours.push_back(colours);
        out.first.push_back(csp.variables);
        for (std::size_t i = 0; i <= levels; ++i)
            csp.add_variable("g" + std::to_string(v) + "_" + std::to_string(i));
        auto var = [&](std::size_t i) { return out.first[v] + i; };

        csp.pin0(var(0));
        csp.pin1(var(levels));
        for (std::size_t i = 1; i <= levels; ++i)
            csp.imp(var(i - 1), var(i));

        std::vector<Rational> positive(levels + 1, 1);
        for (std::size_t i = 1; i <= levels; ++i) {
            const auto & w = weights.rows[v][colours[i - 1]];
            if (w == 0)
                csp.imp(var(i), var(i - 1));
            else
                positive[i] = w;
        }
        for (std::size_t i = 0; i <= levels; ++i) {
            Rational one = 1;
            if (i == levels)
                one = positive[levels];
            else if (i > 0)
                one = positive[i] / positive[i + 1];
            gamma.push_back({Rational(1), one});
        }
    }

    for (const auto & e : g.edges()) {
        auto v = g_side[e.u] == 0 ? e.u : e.v;
        auto vp = v == e.u ? e.v : e.u;
        auto x = [&](std::size_t i) { return out.first[v] + i; };
        auto y = [&](std::size_t i) { return out.first[vp] + i; };
        for (std::size_t i = 1; i <= a_order.size(); ++i) {
            csp.imp(x(i), y(a_hi[i - 1]));
            csp.imp(y(a_lo[i - 1] - 1), x(i - 1));
        }
        for (std::size_t i = 1; i <= b_order.size(); ++i) {
            csp.imp(y(i), x(b_hi[i - 1]));
            csp.imp(x(b_lo[i - 1] - 1), y(i - 1));
        }
    }
    return out;
}

auto decode_assignment(const SideReduction & reduction, const std::vector<int> & tau) -> std::vector<Vertex>
{
    std::vector<Vertex> sigma;
    for (std::size_t v = 0; v < reduction.first.size(); ++v) {
        const auto & colours = reduction.colours[v];
        std::size_t i = 0;
        while (i <= colours.size() && tau.at(reduction.first[v] + i) == 0)
            ++i;
        if (i == 0 || i > colours.size())
            throw PreconditionError(module, "assignment violates the pins of vertex " + std::to_string(v));
        sigma.push_back(colours[i - 1]);
    }
    return sigma;
}

auto whom_via_csp(const Graph & g, const WeightTable & weights, const Graph & h) -> Rational
{
    weights.validate(g.vertex_count(), h.vertex_count());
    if (classify_tree(h) == TreeClass::ContainsJ3)
        throw PreconditionError(module, "the target contains an induced J3");

    std::optional<ConvexOrder> order;
    if (h.vertex_count() > 1)
        order = convex_order(h);

    Rational result = 1;
    for (const auto & component : components(g)) {
        auto sub = induced_subgraph(g, component);
        if (! sub.is_bipartite())
            return 0;
        WeightTable sub_weights{weights.colours, {}};
        for (auto v : component)
            sub_weights.rows.push_back(weights.rows[v]);

        if (! order) {
            // Single-vertex target: only edgeless components map.
            if (sub.edge_count() > 0)
                return 0;
            result *= sub_weights.rows[0][0];
            continue;
        }
        Rational total = 0;
        for (auto side : {Side::Left, Side::Right})
            total += count_wcsp(reduce_whom_side(sub, sub_weights, h, *order, side).instance);
        result *= total;
        if (result == 0)
            return result;
    }
    return result;
}

}
