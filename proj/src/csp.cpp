#include "homred/csp.hpp"
#include "homred/error.hpp"
#include "homred/text_format.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace homred {

namespace
{
    const std::string module = "csp_imp";
}

auto CspInstance::add_variable(std::string name) -> std::size_t
{
    if (! name.empty() || ! names.empty()) {
        names.resize(variables);
        names.push_back(std::move(name));
    }
    return variables++;
}

auto CspInstance::imp(std::size_t x, std::size_t y) -> std::size_t
{
    constraints.push_back(Constraint{ConstraintKind::Imp, x, y});
    return constraints.size() - 1;
}

auto CspInstance::pin0(std::size_t x) -> std::size_t
{
    constraints.push_back(Constraint{ConstraintKind::Pin0, x, 0});
    return constraints.size() - 1;
}

auto CspInstance::pin1(std::size_t x) -> std::size_t
{
    constraints.push_back(Constraint{ConstraintKind::Pin1, x, 0});
    return constraints.size() - 1;
}

void CspInstance::validate() const
{
    for (const auto & c : constraints)
        if (c.x >= variables || (c.kind == ConstraintKind::Imp && c.y >= variables))
            throw PreconditionError(module, "constraint refers to a variable out of range");
    if (! names.empty() && names.size() != variables)
        throw PreconditionError(module, "variable names do not match the variable count");
}

auto WeightedCspInstance::unit(CspInstance csp) -> WeightedCspInstance
{
    auto n = csp.variables;
    return WeightedCspInstance{std::move(csp), std::vector<std::array<Rational, 2>>(n, {Rational(1), Rational(1)})};
}

void WeightedCspInstance::validate() const
{
    csp.validate();
    if (weights.size() != csp.variables)
        throw PreconditionError(module, "one weight pair per variable is required");
    for (const auto & w : weights)
        if (w[0] <= 0 || w[1] <= 0)
            throw PreconditionError(module, "weights must be positive");
}

namespace
{
    // Weighted model counter for IMP / pin constraints. Variables forced
    // equal by implication cycles are merged first; the remaining implication
    // DAG is counted by branching with full propagation and splitting into
    // connected components.
    class Counter
    {
    public:
        explicit Counter(const WeightedCspInstance & instance)
        {
            const auto & csp = instance.csp;
            auto n = csp.variables;
            std::vector<std::vector<std::size_t>> succ(n);
            for (const auto & c : csp.constraints)
                if (c.kind == ConstraintKind::Imp && c.x != c.y)
                    succ[c.x].push_back(c.y);

            auto scc = strongly_connected(succ);
            classes_ = 0;
            for (auto c : scc)
                classes_ = std::max(classes_, c + 1);

            weight_.assign(classes_, {Rational(1), Rational(1)});
            for (std::size_t v = 0; v < n; ++v) {
                weight_[scc[v]][0] *= instance.weights[v][0];
                weight_[scc[v]][1] *= instance.weights[v][1];
            }

            succ_.resize(classes_);
            pred_.resize(classes_);
            for (std::size_t v = 0; v < n; ++v)
                for (auto u : succ[v])
                    if (scc[v] != scc[u]) {
                        succ_[scc[v]].push_back(scc[u]);
                        pred_[scc[u]].push_back(scc[v]);
                    }
            for (auto * lists : {&succ_, &pred_})
                for (auto & l : *lists) {
                    std::sort(l.begin(), l.end());
                    l.erase(std::unique(l.begin(), l.end()), l.end());
                }

            value_.assign(classes_, -1);
            for (const auto & c : csp.constraints) {
                if (c.kind == ConstraintKind::Imp)
                    continue;
                int want = c.kind == ConstraintKind::Pin1 ? 1 : 0;
                pins_.emplace_back(scc[c.x], want);
            }
        }

        auto run() -> Rational
        {
            Rational factor = 1;
            for (auto [c, want] : pins_) {
                if (value_[c] == want)
                    continue;
                if (value_[c] != -1)
                    return 0;
                std::vector<std::size_t> trail;
                if (! assign(c, want, trail))
                    return 0;
                for (auto v : trail)
                    factor *= weight_[v][value_[v]];
            }
            std::vector<std::size_t> free;
            for (std::size_t c = 0; c < classes_; ++c)
                if (value_[c] == -1)
                    free.push_back(c);
            return factor * solve(free);
        }

    private:
        std::size_t classes_ = 0;
        std::vector<std::array<Rational, 2>> weight_;
        std::vector<std::vector<std::size_t>> succ_, pred_;
        std::vector<int> value_;
        std::vector<std::pair<std::size_t, int>> pins_;

        static auto strongly_connected(const std::vector<std::vector<std::size_t>> & succ) -> std::vector<std::size_t>
        {
            // Iterative Tarjan.
            auto n = succ.size();
            std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), component(n, SIZE_MAX), stack;
            std::vector<bool> on_stack(n, false);
            std::size_t next_index = 0, next_component = 0;
            std::vector<std::pair<std::size_t, std::size_t>> frames;
            for (std::size_t root = 0; root < n; ++root) {
                if (index[root] != SIZE_MAX)
                    continue;
                frames.emplace_back(root, 0);
                while (! frames.empty()) {
                    auto & [v, edge] = frames.back();
                    if (edge == 0 && index[v] == SIZE_MAX) {
                        index[v] = low[v] = next_index++;
                        stack.push_back(v);
                        on_stack[v] = true;
                    }
                    if (edge < succ[v].size()) {
                        auto u = succ[v][edge++];
                        if (index[u] == SIZE_MAX)
                            frames.emplace_back(u, 0);
                        else if (on_stack[u])
                            low[v] = std::min(low[v], index[u]);
                        continue;
                    }
                    if (low[v] == index[v]) {
                        std::size_t u;
                        do {
                            u = stack.back();
                            stack.pop_back();
                            on_stack[u] = false;
                            component[u] = next_component;
                        } while (u != v);
                        ++next_component;
                    }
                    auto finished = v;
                    frames.pop_back();
                    if (! frames.empty()) {
                        auto parent = frames.back().first;
                        low[parent] = std::min(low[parent], low[finished]);
                    }
                }
            }
            return component;
        }

        // Sets c and everything it forces; false on contradiction (the trail
        // still lists what was set so the caller can undo).
        auto assign(std::size_t c, int b, std::vector<std::size_t> & trail) -> bool
        {
            std::vector<std::size_t> stack{c};
            value_[c] = b;
            trail.push_back(c);
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (auto u : b == 1 ? succ_[v] : pred_[v]) {
                    if (value_[u] == b)
                        continue;
                    if (value_[u] != -1)
                        return false;
                    value_[u] = b;
                    trail.push_back(u);
                    stack.push_back(u);
                }
            }
            return true;
        }

        void undo(const std::vector<std::size_t> & trail)
        {
            for (auto v : trail)
                value_[v] = -1;
        }

        auto free_degree(std::size_t v) const -> std::size_t
        {
            std::size_t d = 0;
            for (auto u : succ_[v])
                d += value_[u] == -1;
            for (auto u : pred_[v])
                d += value_[u] == -1;
            return d;
        }

        auto components_of(const std::vector<std::size_t> & vars) -> std::vector<std::vector<std::size_t>>
        {
            std::vector<std::vector<std::size_t>> out;
            std::vector<std::size_t> seen;
            std::vector<bool> mark(classes_, false);
            for (auto s : vars) {
                if (mark[s] || value_[s] != -1)
                    continue;
                std::vector<std::size_t> comp{s};
                mark[s] = true;
                for (std::size_t i = 0; i < comp.size(); ++i) {
                    auto v = comp[i];
                    for (const auto * list : {&succ_[v], &pred_[v]})
                        for (auto u : *list)
                            if (! mark[u] && value_[u] == -1) {
                                mark[u] = true;
                                comp.push_back(u);
                            }
                }
                out.push_back(std::move(comp));
            }
            return out;
        }

        auto solve(const std::vector<std::size_t> & vars) -> Rational
        {
            Rational result = 1;
            for (const auto & comp : components_of(vars)) {
                if (comp.size() == 1) {
                    result *= weight_[comp[0]][0] + weight_[comp[0]][1];
                    continue;
                }
                auto pivot = comp[0];
                auto best = free_degree(pivot);
                for (auto v : comp) {
                    auto d = free_degree(v);
                    if (d > best || (d == best && v < pivot)) {
                        best = d;
                        pivot = v;
                    }
                }
                Rational sum = 0;
                for (int b : {1, 0}) {
                    std::vector<std::size_t> trail;
                    if (assign(pivot, b, trail)) {
                        Rational term = 1;
                        for (auto v : trail)
                            term *= weight_[v][b];
                        std::vector<std::size_t> rest;
                        for (auto v : comp)
                            if (value_[v] == -1)
                                rest.push_back(v);
                        sum += term * solve(rest);
                    }
                    undo(trail);
                }
                result *= sum;
                if (result == 0)
                    return result;
            }
            return result;
        }
    };
}

auto count_wcsp(const WeightedCspInstance & instance) -> Rational
{
    instance.validate();
    return Counter(instance).run();
}

auto count_csp(const CspInstance & instance) -> Integer
{
    return to_integer(count_wcsp(WeightedCspInstance::unit(instance)));
}

auto clear_denominators(const WeightedCspInstance & instance) -> ClearedWeights
{
    instance.validate();
    ClearedWeights out{instance, 1};
    for (auto & w : out.instance.weights) {
        Integer d = lcm(w[0].get_den(), w[1].get_den());
        w[0] *= d;
        w[1] *= d;
        out.scale *= d;
    }
    return out;
}

auto BranchBits::set_bits() const -> std::vector<std::size_t>
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            out.push_back(i);
    return out;
}

auto BranchBits::next(std::size_t i) const -> std::size_t
{
    for (auto j = i + 1; j < bits.size(); ++j)
        if (bits[j])
            return j;
    throw PreconditionError(module, "no set bit above " + std::to_string(i));
}

auto BranchBits::prev(std::size_t i) const -> std::size_t
{
    for (auto j = i; j-- > 0;)
        if (bits[j])
            return j;
    throw PreconditionError(module, "no set bit below " + std::to_string(i));
}

auto bit_expansion(const Integer & gamma0, const Integer & gamma1) -> BitExpansion
{
    if (gamma0 <= 0 || gamma1 <= 0)
        throw PreconditionError(module, "bit expansion needs positive integer weights");
    auto ceil_lg = [](const Integer & x) -> std::size_t {
        // smallest k with 2^k >= x
        return x == 1 ? 0 : mpz_sizeinbase(Integer(x - 1).get_mpz_t(), 2);
    };
    BitExpansion e;
    e.k = std::max(ceil_lg(gamma0), ceil_lg(gamma1));
    for (int b = 0; b < 2; ++b) {
        const auto & value = b == 0 ? gamma1 : gamma0;
        auto & branch = e.branch[b];
        branch.bits.assign(e.k + 1, false);
        for (std::size_t i = 0; i <= e.k; ++i)
            branch.bits[i] = mpz_tstbit(value.get_mpz_t(), i) != 0;
        auto set = branch.set_bits();
        branch.min = set.front();
        branch.max = set.back();
    }
    return e;
}

auto compile_weight_gadget(const WeightedCspInstance & instance) -> CompiledGadget
{
    instance.validate();
    CompiledGadget out;
    auto & csp = out.instance;
    auto n = instance.csp.variables;

    auto name_of = [&](std::size_t x) {
        if (! instance.csp.names.empty() && ! instance.csp.names[x].empty())
            return instance.csp.names[x];
        return "v" + std::to_string(x);
    };
    for (std::size_t x = 0; x < n; ++x)
        csp.add_variable(name_of(x));
    csp.constraints = instance.csp.constraints;

    for (std::size_t x = 0; x < n; ++x) {
        const auto & w = instance.weights[x];
        if (! is_integer(w[0]) || ! is_integer(w[1]))
            throw PreconditionError(module, "compile_weight_gadget needs integer weights; clear denominators first");
        VariableLayout layout;
        layout.expansion = bit_expansion(to_integer(w[0]), to_integer(w[1]));
        auto xs = name_of(x);

        for (int b = 0; b < 2; ++b) {
            const auto & bits = layout.expansion.branch[b];
            auto & branch = layout.branch[b];
            for (auto i : bits.set_bits()) {
                auto tag = xs + "_" + std::to_string(b) + "_" + std::to_string(i);
                ChainGadget g;
                g.bit = i;
                g.left = csp.add_variable("L_" + tag);
                g.right = csp.add_variable("R_" + tag);
                if (i == 0)
                    g.constraints.push_back(csp.imp(g.left, g.right));
                for (std::size_t j = 1; j <= i; ++j) {
                    auto inner = csp.add_variable(tag + "_" + std::to_string(j));
                    g.inner.push_back(inner);
                    g.constraints.push_back(csp.imp(g.left, inner));
                    g.constraints.push_back(csp.imp(inner, g.right));
                }
                branch.gadgets.push_back(std::move(g));
            }
            for (std::size_t t = 0; t + 1 < branch.gadgets.size(); ++t) {
                auto r = branch.gadgets[t].right, l = branch.gadgets[t + 1].left;
                branch.links.push_back(csp.imp(r, l));
                branch.links.push_back(csp.imp(l, r));
            }
            if (b == 0)
                branch.pins.push_back(csp.pin0(branch.gadgets.front().left));
            else
                branch.pins.push_back(csp.pin1(branch.gadgets.back().right));
        }

        auto r0 = layout.branch[0].gadgets.back().right;
        auto l1 = layout.branch[1].gadgets.front().left;
        layout.wiring = {csp.imp(x, r0), csp.imp(r0, x), csp.imp(x, l1), csp.imp(l1, x)};
        out.layout.push_back(std::move(layout));
    }
    return out;
}

namespace
{
    auto parse_any(std::string_view text, bool allow_weights) -> WeightedCspInstance
    {
        auto records = tokenize_records(text);
        if (records.empty())
            throw ParseError(module, 0, "empty csp file");
        const auto & header = records.front();
        if (header.fields.size() != 3 || header.fields[0] != "csp")
            throw ParseError(module, header.line, "expected 'csp <nvars> <nc>'");
        auto n = parse_index(module, header, 1);
        auto nc = parse_index(module, header, 2);

        WeightedCspInstance out;
        out.csp.variables = n;
        out.weights.assign(n, {Rational(1), Rational(1)});
        std::vector<bool> weighted(n, false);
        auto var = [&](const Record & r, std::size_t field) {
            auto v = parse_index(module, r, field);
            if (v >= n)
                throw ParseError(module, r.line, "variable index >= nvars");
            return v;
        };

        for (std::size_t i = 1; i < records.size(); ++i) {
            const auto & r = records[i];
            const auto & kind = r.fields[0];
            if (kind == "imp" && r.fields.size() == 3)
                out.csp.imp(var(r, 1), var(r, 2));
            else if (kind == "pin0" && r.fields.size() == 2)
                out.csp.pin0(var(r, 1));
            else if (kind == "pin1" && r.fields.size() == 2)
                out.csp.pin1(var(r, 1));
            else if (kind == "wt" && r.fields.size() == 4) {
                if (! allow_weights)
                    throw ParseError(module, r.line, "weight line in an unweighted instance");
                auto x = var(r, 1);
                if (weighted[x])
                    throw ParseError(module, r.line, "duplicate weight line for variable " + std::to_string(x));
                weighted[x] = true;
                for (int b = 0; b < 2; ++b) {
                    try {
                        out.weights[x][b] = parse_rational(r.fields[2 + b]);
                    }
                    catch (const ParseError & e) {
                        throw ParseError(module, r.line, e.what());
                    }
                    if (out.weights[x][b] <= 0)
                        throw ParseError(module, r.line, "weights must be positive");
                }
            }
            else
                throw ParseError(module, r.line, "expected 'imp <x> <y>', 'pin0 <x>', 'pin1 <x>' or 'wt <x> <g0> <g1>'");
        }
        if (out.csp.constraints.size() != nc)
            throw ParseError(module, header.line, "header announces " + std::to_string(nc) + " constraints, file has "
                    + std::to_string(out.csp.constraints.size()));
        return out;
    }

    void write_body(std::ostringstream & out, const CspInstance & instance)
    {
        out << "csp " << instance.variables << ' ' << instance.constraints.size() << '\n';
        for (std::size_t v = 0; v < instance.names.size(); ++v)
            if (! instance.names[v].empty())
                out << "# var " << v << ' ' << instance.names[v] << '\n';
        for (const auto & c : instance.constraints) {
            switch (c.kind) {
            case ConstraintKind::Imp:
                out << "imp " << c.x << ' ' << c.y << '\n';
                break;
            case ConstraintKind::Pin0:
                out << "pin0 " << c.x << '\n';
                break;
            case ConstraintKind::Pin1:
                out << "pin1 " << c.x << '\n';
                break;
            }
        }
    }
}

auto parse_csp(std::string_view text) -> CspInstance
{
    return parse_any(text, false).csp;
}

auto parse_weighted_csp(std::string_view text) -> WeightedCspInstance
{
    return parse_any(text, true);
}

auto write_csp(const CspInstance & instance) -> std::string
{
    std::ostringstream out;
    write_body(out, instance);
    return out.str();
}

auto write_weighted_csp(const WeightedCspInstance & instance) -> std::string
{
    std::ostringstream out;
    write_body(out, instance.csp);
    for (std::size_t v = 0; v < instance.weights.size(); ++v)
        out << "wt " << v << ' ' << to_string(instance.weights[v][0]) << ' ' << to_string(instance.weights[v][1]) << '\n';
    return out.str();
}

}
