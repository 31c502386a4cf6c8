#include "homred/hom_count.hpp"
#include "homred/error.hpp"
#include "homred/text_format.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <set>
#include <sstream>

namespace homred {

namespace
{
    const std::string module = "hom_count";

    // Largest factor table bucket elimination will allocate.
    constexpr std::size_t max_factor_entries = std::size_t{1} << 26;
}

auto WeightTable::uniform(std::size_t vertices, std::size_t colours) -> WeightTable
{
    return WeightTable{colours, std::vector<std::vector<Rational>>(vertices, std::vector<Rational>(colours, Rational(1)))};
}

void WeightTable::validate(std::size_t vertices, std::size_t expected_colours) const
{
    if (colours != expected_colours)
        throw PreconditionError(module, "weight table has " + std::to_string(colours) + " colours, target has "
                + std::to_string(expected_colours));
    if (rows.size() != vertices)
        throw PreconditionError(module, "weight table has " + std::to_string(rows.size()) + " rows, instance has "
                + std::to_string(vertices) + " vertices");
    for (const auto & row : rows) {
        if (row.size() != colours)
            throw PreconditionError(module, "weight row of wrong length");
        for (const auto & x : row)
            if (x < 0)
                throw PreconditionError(module, "negative weight " + to_string(x));
    }
}

auto parse_weights(std::string_view text) -> WeightTable
{
    auto records = tokenize_records(text);
    if (records.empty())
        throw ParseError(module, 0, "empty weights file");
    const auto & header = records.front();
    if (header.fields.size() != 3 || header.fields[0] != "weights")
        throw ParseError(module, header.line, "expected 'weights <n> <h>'");
    auto n = parse_index(module, header, 1);
    auto h = parse_index(module, header, 2);
    if (records.size() - 1 != n)
        throw ParseError(module, header.line, "header announces " + std::to_string(n) + " rows, file has "
                + std::to_string(records.size() - 1));

    WeightTable table{h, std::vector<std::vector<Rational>>(n)};
    std::vector<bool> seen(n, false);
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto & r = records[i];
        if (r.fields.size() != h + 2 || r.fields[0] != "w")
            throw ParseError(module, r.line, "expected 'w <v> <r1> ... <r" + std::to_string(h) + ">'");
        auto v = parse_index(module, r, 1);
        if (v >= n)
            throw ParseError(module, r.line, "vertex index >= n");
        if (seen[v])
            throw ParseError(module, r.line, "duplicate row for vertex " + std::to_string(v));
        seen[v] = true;
        for (std::size_t c = 0; c < h; ++c) {
            Rational x;
            try {
                x = parse_rational(r.fields[c + 2]);
            }
            catch (const ParseError & e) {
                throw ParseError(module, r.line, e.what());
            }
            if (x < 0)
                throw ParseError(module, r.line, "negative weight");
            table.rows[v].push_back(x);
        }
    }
    return table;
}

auto write_weights(const WeightTable & table) -> std::string
{
    std::ostringstream out;
    out << "weights " << table.rows.size() << ' ' << table.colours << '\n';
    for (std::size_t v = 0; v < table.rows.size(); ++v) {
        out << "w " << v;
        for (const auto & x : table.rows[v])
            out << ' ' << to_string(x);
        out << '\n';
    }
    return out.str();
}

auto adjacency_table(const Graph & target) -> std::shared_ptr<const PairTable>
{
    auto table = std::make_shared<PairTable>(target.vertex_count());
    for (const auto & e : target.edges()) {
        table->at(e.u, e.v) = 1;
        table->at(e.v, e.u) = 1;
    }
    return table;
}

auto midpoint_table(const Graph & target, const std::vector<bool> & allowed) -> std::shared_ptr<const PairTable>
{
    auto h = target.vertex_count();
    auto table = std::make_shared<PairTable>(h);
    for (Vertex d = 0; d < h; ++d) {
        if (! allowed[d])
            continue;
        for (auto a : target.neighbours(d))
            for (auto b : target.neighbours(d))
                table->at(a, b) += 1;
    }
    return table;
}

EdgeWeightedInstance::EdgeWeightedInstance(std::size_t vertices, std::size_t colours_) :
    vertex_count(vertices),
    colours(colours_),
    vertex_weights(vertices, std::vector<Rational>(colours_, Rational(1))),
    copies(vertices, 1)
{
}

auto EdgeWeightedInstance::from_graph(const Graph & g, const Graph & target) -> EdgeWeightedInstance
{
    EdgeWeightedInstance instance(g.vertex_count(), target.vertex_count());
    auto adjacency = adjacency_table(target);
    for (const auto & e : g.edges())
        instance.add_edge(e.u, e.v, adjacency);
    return instance;
}

auto EdgeWeightedInstance::from_graph(const Graph & g, const Graph & target, const WeightTable & weights)
    -> EdgeWeightedInstance
{
    weights.validate(g.vertex_count(), target.vertex_count());
    auto instance = from_graph(g, target);
    instance.vertex_weights = weights.rows;
    return instance;
}

auto EdgeWeightedInstance::add_vertex(std::vector<Rational> weights, unsigned long copies_) -> Vertex
{
    if (weights.empty())
        weights.assign(colours, Rational(1));
    vertex_weights.push_back(std::move(weights));
    copies.push_back(copies_);
    return vertex_count++;
}

void EdgeWeightedInstance::add_edge(Vertex u, Vertex v, std::shared_ptr<const PairTable> table, unsigned long multiplicity)
{
    edges.push_back(WeightedEdge{u, v, std::move(table), multiplicity});
}

void EdgeWeightedInstance::validate() const
{
    if (vertex_weights.size() != vertex_count || copies.size() != vertex_count)
        throw PreconditionError(module, "instance arrays disagree with vertex count");
    for (const auto & row : vertex_weights)
        if (row.size() != colours)
            throw PreconditionError(module, "vertex weight vector not dimensioned to the target");
    for (auto c : copies)
        if (c == 0)
            throw PreconditionError(module, "copies must be >= 1");
    for (const auto & e : edges) {
        if (e.u >= vertex_count || e.v >= vertex_count)
            throw PreconditionError(module, "edge endpoint out of range");
        if (e.u == e.v)
            throw PreconditionError(module, "edge is a self-loop");
        if (! e.table || e.table->colours() != colours)
            throw PreconditionError(module, "edge table not dimensioned to the target");
        if (e.multiplicity == 0)
            throw PreconditionError(module, "edge multiplicity must be >= 1");
    }
}

namespace
{
    struct Factor
    {
        std::vector<Vertex> scope;  // sorted
        std::vector<Rational> table;
    };

    class Evaluator
    {
    public:
        explicit Evaluator(const EdgeWeightedInstance & instance) :
            instance_(instance),
            h_(instance.colours),
            weights_(instance.vertex_weights),
            alive_(instance.vertex_count, true),
            incident_(instance.vertex_count)
        {
            for (std::size_t i = 0; i < instance.edges.size(); ++i) {
                const auto & e = instance.edges[i];
                incident_[e.u][e.v].push_back(i);
                incident_[e.v][e.u].push_back(i);
            }
        }

        auto run() -> Rational
        {
            if (h_ == 0)
                return instance_.vertex_count == 0 ? Rational(1) : Rational(0);
            absorb_pendants();
            for (Vertex v = 0; v < instance_.vertex_count; ++v)
                if (alive_[v] && instance_.copies[v] != 1)
                    throw PreconditionError(module, "vertex " + std::to_string(v)
                            + " has copies > 1 but is not part of a pendant branch");
            if (scalar_ == 0)
                return scalar_;
            return scalar_ * eliminate();
        }

    private:
        const EdgeWeightedInstance & instance_;
        std::size_t h_;
        std::vector<std::vector<Rational>> weights_;
        std::vector<bool> alive_;
        std::vector<std::map<Vertex, std::vector<std::size_t>>> incident_;
        std::map<std::size_t, PairTable> powered_;
        Rational scalar_ = 1;

        auto powered(std::size_t edge) -> const PairTable &
        {
            auto it = powered_.find(edge);
            if (it != powered_.end())
                return it->second;
            const auto & e = instance_.edges[edge];
            PairTable t(h_);
            for (std::size_t a = 0; a < h_; ++a)
                for (std::size_t b = 0; b < h_; ++b)
                    t.at(a, b) = e.multiplicity == 1 ? e.table->at(a, b) : pow(e.table->at(a, b), static_cast<long>(e.multiplicity));
            return powered_.emplace(edge, std::move(t)).first->second;
        }

        // Combined factor over (colour of a, colour of b) for all edges a-b.
        auto pair_factor(Vertex a, Vertex b) -> PairTable
        {
            PairTable result(h_);
            for (std::size_t ca = 0; ca < h_; ++ca)
                for (std::size_t cb = 0; cb < h_; ++cb)
                    result.at(ca, cb) = 1;
            for (auto idx : incident_[a].at(b)) {
                const auto & t = powered(idx);
                bool forward = instance_.edges[idx].u == a;
                for (std::size_t ca = 0; ca < h_; ++ca)
                    for (std::size_t cb = 0; cb < h_; ++cb) {
                        auto & r = result.at(ca, cb);
                        if (r != 0)
                            r *= forward ? t.at(ca, cb) : t.at(cb, ca);
                    }
            }
            return result;
        }

        void remove_vertex(Vertex v)
        {
            for (auto & [u, list] : incident_[v])
                incident_[u].erase(v);
            incident_[v].clear();
            alive_[v] = false;
        }

        void absorb_pendants()
        {
            std::deque<Vertex> queue;
            for (Vertex v = 0; v < instance_.vertex_count; ++v)
                if (incident_[v].size() <= 1)
                    queue.push_back(v);

            while (! queue.empty()) {
                auto u = queue.front();
                queue.pop_front();
                if (! alive_[u] || incident_[u].size() > 1)
                    continue;

                if (incident_[u].empty()) {
                    Rational total = 0;
                    for (const auto & x : weights_[u])
                        total += x;
                    scalar_ *= instance_.copies[u] == 1 ? total : pow(total, static_cast<long>(instance_.copies[u]));
                    alive_[u] = false;
                    continue;
                }

                auto p = incident_[u].begin()->first;
                if (incident_[p].size() == 1) {
                    if (instance_.copies[u] > 1 && instance_.copies[p] > 1)
                        throw PreconditionError(module, "two adjacent replicated vertices form a component");
                    if (instance_.copies[p] > 1)
                        std::swap(u, p);
                }

                auto factor = pair_factor(p, u);
                auto copies = instance_.copies[u];
                for (std::size_t cp = 0; cp < h_; ++cp) {
                    if (weights_[p][cp] == 0)
                        continue;
                    Rational message = 0;
                    for (std::size_t cu = 0; cu < h_; ++cu) {
                        const auto & wu = weights_[u][cu];
                        const auto & f = factor.at(cp, cu);
                        if (wu != 0 && f != 0)
                            message += wu * f;
                    }
                    if (copies != 1)
                        message = pow(message, static_cast<long>(copies));
                    weights_[p][cp] *= message;
                }
                remove_vertex(u);
                if (incident_[p].size() <= 1)
                    queue.push_back(p);
            }
        }

        auto eliminate() -> Rational
        {
            std::vector<Factor> factors;
            std::map<Vertex, std::set<Vertex>> interaction;
            for (Vertex v = 0; v < instance_.vertex_count; ++v) {
                if (! alive_[v])
                    continue;
                factors.push_back(Factor{{v}, weights_[v]});
                auto & nbrs = interaction[v];
                for (const auto & [u, list] : incident_[v]) {
                    nbrs.insert(u);
                    if (v < u) {
                        auto t = pair_factor(v, u);
                        Factor f{{v, u}, std::vector<Rational>(h_ * h_)};
                        for (std::size_t a = 0; a < h_; ++a)
                            for (std::size_t b = 0; b < h_; ++b)
                                f.table[a * h_ + b] = t.at(a, b);
                        factors.push_back(std::move(f));
                    }
                }
            }

            while (! interaction.empty()) {
                auto best = interaction.begin();
                for (auto it = interaction.begin(); it != interaction.end(); ++it)
                    if (it->second.size() < best->second.size())
                        best = it;
                auto x = best->first;
                auto nbrs = best->second;

                std::vector<Factor> involved, rest;
                for (auto & f : factors)
                    (std::binary_search(f.scope.begin(), f.scope.end(), x) ? involved : rest).push_back(std::move(f));
                factors = std::move(rest);
                factors.push_back(sum_out(x, std::vector<Vertex>(nbrs.begin(), nbrs.end()), involved));

                for (auto a : nbrs) {
                    auto & set_a = interaction[a];
                    set_a.erase(x);
                    for (auto b : nbrs)
                        if (a != b)
                            set_a.insert(b);
                }
                interaction.erase(x);
            }

            Rational result = 1;
            for (const auto & f : factors)
                result *= f.table.at(0);
            return result;
        }

        auto sum_out(Vertex x, const std::vector<Vertex> & scope, const std::vector<Factor> & involved) -> Factor
        {
            auto k = scope.size();
            std::size_t entries = 1;
            for (std::size_t i = 0; i < k; ++i) {
                if (entries > max_factor_entries / h_)
                    throw CapacityError(module, "elimination produced a factor over " + std::to_string(k)
                            + " vertices; the core graph is too wide");
                entries *= h_;
            }

            // stride[f][j]: stride of scope[j] in factor f; x_stride[f]: stride of x.
            std::vector<std::vector<std::size_t>> stride(involved.size(), std::vector<std::size_t>(k, 0));
            std::vector<std::size_t> x_stride(involved.size(), 0);
            for (std::size_t f = 0; f < involved.size(); ++f) {
                const auto & sc = involved[f].scope;
                std::size_t s = 1;
                for (std::size_t pos = sc.size(); pos-- > 0;) {
                    if (sc[pos] == x)
                        x_stride[f] = s;
                    else
                        stride[f][std::lower_bound(scope.begin(), scope.end(), sc[pos]) - scope.begin()] = s;
                    s *= h_;
                }
            }

            Factor out{scope, std::vector<Rational>(entries)};
            std::vector<std::size_t> digits(k, 0), base(involved.size(), 0);
            Rational product;
            for (std::size_t idx = 0; idx < entries; ++idx) {
                Rational sum = 0;
                for (std::size_t cx = 0; cx < h_; ++cx) {
                    bool zero = false;
                    product = 1;
                    for (std::size_t f = 0; f < involved.size(); ++f) {
                        const auto & value = involved[f].table[base[f] + cx * x_stride[f]];
                        if (value == 0) {
                            zero = true;
                            break;
                        }
                        product *= value;
                    }
                    if (! zero)
                        sum += product;
                }
                out.table[idx] = std::move(sum);

                for (std::size_t j = k; j-- > 0;) {
                    ++digits[j];
                    for (std::size_t f = 0; f < involved.size(); ++f)
                        base[f] += stride[f][j];
                    if (digits[j] < h_)
                        break;
                    digits[j] = 0;
                    for (std::size_t f = 0; f < involved.size(); ++f)
                        base[f] -= h_ * stride[f][j];
                }
            }
            return out;
        }
    };
}

auto count_ewhom(const EdgeWeightedInstance & instance) -> Rational
{
    instance.validate();
    return Evaluator(instance).run();
}

auto count_ewhom(const EdgeWeightedInstance & instance, const Graph & target) -> Rational
{
    if (instance.colours != target.vertex_count())
        throw PreconditionError(module, "instance has " + std::to_string(instance.colours) + " colours, target has "
                + std::to_string(target.vertex_count()) + " vertices");
    return count_ewhom(instance);
}

auto count_hom(const Graph & g, const Graph & target) -> Integer
{
    return to_integer(count_ewhom(EdgeWeightedInstance::from_graph(g, target)));
}

auto count_whom(const Graph & g, const Graph & target, const WeightTable & weights) -> Rational
{
    return count_ewhom(EdgeWeightedInstance::from_graph(g, target, weights));
}

auto count_hom_pinned(const Graph & g, const Graph & target, const std::map<Vertex, Vertex> & pins) -> Integer
{
    auto instance = EdgeWeightedInstance::from_graph(g, target);
    for (const auto & [v, c] : pins) {
        if (v >= g.vertex_count() || c >= target.vertex_count())
            throw PreconditionError(module, "pin out of range");
        auto & row = instance.vertex_weights[v];
        std::fill(row.begin(), row.end(), Rational(0));
        row[c] = 1;
    }
    return to_integer(count_ewhom(instance));
}

auto complete_bipartite_whom(const Graph & g, const Graph & target, const WeightTable & weights) -> Rational
{
    weights.validate(g.vertex_count(), target.vertex_count());
    const auto & tb = target.bipartition();
    if (! tb || tb->left.empty() || tb->right.empty() || target.edge_count() != tb->left.size() * tb->right.size())
        throw PreconditionError(module, "complete_bipartite_whom: target is not complete bipartite");

    auto side_sum = [&](Vertex v, const std::vector<Vertex> & colours) {
        Rational s = 0;
        for (auto c : colours)
            s += weights.rows[v][c];
        return s;
    };

    Rational result = 1;
    for (const auto & component : components(g)) {
        auto sub = induced_subgraph(g, component);
        const auto & bp = sub.bipartition();
        if (! bp)
            return 0;
        Rational first = 1, second = 1;
        for (auto local : bp->left) {
            first *= side_sum(component[local], tb->left);
            second *= side_sum(component[local], tb->right);
        }
        for (auto local : bp->right) {
            first *= side_sum(component[local], tb->right);
            second *= side_sum(component[local], tb->left);
        }
        result *= first + second;
    }
    return result;
}

namespace
{
    void count_simple_paths(const Graph & h, Vertex v, std::size_t depth, std::size_t kmax,
            std::vector<bool> & visited, std::vector<Integer> & counts)
    {
        if (depth == kmax)
            return;
        for (auto u : h.neighbours(v)) {
            if (visited[u])
                continue;
            counts[depth] += 1;
            visited[u] = true;
            count_simple_paths(h, u, depth + 1, kmax, visited, counts);
            visited[u] = false;
        }
    }
}

auto walk_profile(const Graph & h, Vertex v, std::size_t kmax) -> WalkProfile
{
    if (kmax < 1)
        throw PreconditionError(module, "walk_profile needs kmax >= 1");
    if (v >= h.vertex_count())
        throw PreconditionError(module, "walk_profile: vertex out of range");

    WalkProfile profile{std::vector<Integer>(kmax, 0), {}};
    std::vector<bool> visited(h.vertex_count(), false);
    visited[v] = true;
    count_simple_paths(h, v, 0, kmax, visited, profile.simple_paths);

    // Row sums of A^k: x_k = A x_{k-1}, x_0 = 1.
    std::vector<Integer> x(h.vertex_count(), 1);
    for (std::size_t k = 1; k <= kmax; ++k) {
        std::vector<Integer> next(h.vertex_count(), 0);
        for (Vertex a = 0; a < h.vertex_count(); ++a)
            for (auto b : h.neighbours(a))
                next[a] += x[b];
        x = std::move(next);
        profile.walks.push_back(x[v]);
    }
    return profile;
}

auto walk_table() -> std::vector<WalkTableRow>
{
    auto tree = j3_star_tree();
    std::vector<WalkTableRow> rows;
    for (const char * label : {"w", "x0", "x1", "x2.1", "y0", "y1", "y2.1", "y3.1.1", "z0", "z1", "z2.1", "z3.1.1", "z4.1.1.1"}) {
        auto v = tree.at(label);
        rows.push_back(WalkTableRow{label, v, walk_profile(tree.graph, v, 3)});
    }
    return rows;
}

auto format_walk_table(const std::vector<WalkTableRow> & rows) -> std::string
{
    std::ostringstream out;
    out << std::left << std::setw(10) << "h";
    for (const char * column : {"d1", "d2", "d3", "w1", "w2", "w3"})
        out << std::right << std::setw(4) << column;
    out << '\n';
    for (const auto & row : rows) {
        out << std::left << std::setw(10) << row.label;
        for (const auto & x : row.profile.simple_paths)
            out << std::right << std::setw(4) << x.get_str();
        for (const auto & x : row.profile.walks)
            out << std::right << std::setw(4) << x.get_str();
        out << '\n';
    }
    return out.str();
}

}
