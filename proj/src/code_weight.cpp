#include "homred/code_weight.hpp"
#include "homred/error.hpp"
#include "homred/potts.hpp"
#include "homred/text_format.hpp"

#include <sstream>

namespace homred {

namespace
{
    const std::string module = "code_weight";

    auto inverse_mod(unsigned long a, unsigned long p) -> unsigned long
    {
        // a^(p-2) mod p.
        unsigned long result = 1, base = a % p, e = p - 2;
        while (e > 0) {
            if (e & 1)
                result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    }

    void check_prime(unsigned long p)
    {
        if (! is_prime(p))
            throw PreconditionError(module, std::to_string(p) + " is not prime");
        if (p > (1UL << 31))
            throw PreconditionError(module, "p too large");
    }
}

auto is_prime(unsigned long p) -> bool
{
    if (p < 2)
        return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

void LinearCode::validate() const
{
    check_prime(p);
    for (const auto & row : rows) {
        if (row.size() != length)
            throw PreconditionError(module, "row length differs from the code length");
        for (auto x : row)
            if (x >= p)
                throw PreconditionError(module, "entry " + std::to_string(x) + " outside [0, " + std::to_string(p) + ")");
    }
}

auto parse_code(std::string_view text) -> LinearCode
{
    auto records = tokenize_records(text);
    if (records.empty())
        throw ParseError(module, 0, "empty code file");
    const auto & header = records.front();
    if (header.fields.size() != 4 || header.fields[0] != "code")
        throw ParseError(module, header.line, "expected 'code <p> <rows> <cols>'");
    LinearCode code;
    code.p = parse_index(module, header, 1);
    auto rows = parse_index(module, header, 2);
    code.length = parse_index(module, header, 3);
    if (! is_prime(code.p))
        throw ParseError(module, header.line, std::to_string(code.p) + " is not prime");
    if (records.size() - 1 != rows)
        throw ParseError(module, header.line, "header announces " + std::to_string(rows) + " rows, file has "
                + std::to_string(records.size() - 1));
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto & r = records[i];
        if (r.fields.size() != code.length)
            throw ParseError(module, r.line, "expected " + std::to_string(code.length) + " entries");
        std::vector<unsigned long> row;
        for (std::size_t j = 0; j < code.length; ++j) {
            auto x = parse_index(module, r, j);
            if (x >= code.p)
                throw ParseError(module, r.line, "entry " + std::to_string(x) + " not in F_" + std::to_string(code.p));
            row.push_back(x);
        }
        code.rows.push_back(std::move(row));
    }
    return code;
}

auto write_code(const LinearCode & code) -> std::string
{
    std::ostringstream out;
    out << "code " << code.p << ' ' << code.rows.size() << ' ' << code.length << '\n';
    for (const auto & row : code.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? " " : "") << row[j];
        out << '\n';
    }
    return out.str();
}

auto row_basis(const LinearCode & code) -> Matrix
{
    code.validate();
    auto p = code.p;
    auto m = code.rows;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < code.length && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[rank], m[pivot]);
        auto inv = inverse_mod(m[rank][col], p);
        for (auto & x : m[rank])
            x = x * inv % p;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0)
                continue;
            auto factor = m[r][col];
            for (std::size_t j = 0; j < code.length; ++j)
                m[r][j] = (m[r][j] + (p - factor) * m[rank][j]) % p;
        }
        ++rank;
    }
    m.resize(rank);
    return m;
}

auto weight_enumerator(const LinearCode & code, const Rational & lambda) -> Rational
{
    auto basis = row_basis(code);
    auto p = code.p;
    auto rank = basis.size();
    auto cap = enumeration_cap(100'000'000ULL);
    unsigned long long total = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        if (total > cap / p)
            throw CapacityError(module, std::to_string(p) + "^" + std::to_string(rank) + " codewords exceed the enumeration cap");
        total *= p;
    }

    // Odometer over coefficient vectors; a digit step adds its basis row once,
    // including the wrap from p-1 back to 0.
    std::vector<unsigned long long> histogram(code.length + 1, 0);
    std::vector<unsigned long> word(code.length, 0), digit(rank, 0);
    std::size_t weight = 0;
    while (true) {
        ++histogram[weight];
        std::size_t i = 0;
        for (; i < rank; ++i) {
            for (std::size_t j = 0; j < code.length; ++j) {
                if (basis[i][j] == 0)
                    continue;
                bool was = word[j] != 0;
                word[j] = (word[j] + basis[i][j]) % p;
                bool is = word[j] != 0;
                weight = weight + is - was;
            }
            if (++digit[i] < p)
                break;
            digit[i] = 0;
        }
        if (i == rank)
            break;
    }

    Rational sum = 0;
    for (std::size_t w = 0; w <= code.length; ++w)
        if (histogram[w] != 0)
            sum += Rational(Integer(std::to_string(histogram[w]))) * pow(lambda, static_cast<long>(w));
    return sum;
}

auto colour_digits(unsigned long c, unsigned long p, unsigned long k) -> std::vector<unsigned long>
{
    std::vector<unsigned long> digits(k);
    for (auto & d : digits) {
        d = c % p;
        c /= p;
    }
    return digits;
}

auto PottsCodeSystem::code() const -> LinearCode
{
    LinearCode out;
    out.p = p;
    out.length = equations.size();
    auto columns = equations.empty() ? k * graph.vertex_count() : equations.front().size();
    out.rows.assign(columns, std::vector<unsigned long>(out.length, 0));
    for (std::size_t r = 0; r < equations.size(); ++r)
        for (std::size_t c = 0; c < columns; ++c)
            out.rows[c][r] = equations[r][c];
    return out;
}

auto build_potts_code(const Graph & g, unsigned long p, unsigned long k, bool reversed) -> PottsCodeSystem
{
    check_prime(p);
    if (k == 0)
        throw PreconditionError(module, "k must be positive");
    if (g.vertex_count() == 0 || ! is_connected(g))
        throw PreconditionError(module, "the Potts code needs a connected graph");

    PottsCodeSystem system;
    system.graph = g;
    system.p = p;
    system.k = k;
    system.reversed = reversed;
    Integer q = pow(Integer(p), k);
    if (! q.fits_ulong_p() || q > 1'000'000)
        throw PreconditionError(module, "p^k too large");
    system.q = q.get_ui();
    for (unsigned long j = 0; j < system.q; ++j)
        system.forms.push_back(colour_digits(j, p, k));

    auto n = g.vertex_count();
    for (const auto & e : g.edges()) {
        auto tail = reversed ? e.v : e.u, head = reversed ? e.u : e.v;
        for (const auto & alpha : system.forms) {
            std::vector<unsigned long> row(k * n, 0);
            for (unsigned long i = 0; i < k; ++i) {
                row[i * n + head] = alpha[i];
                row[i * n + tail] = (p - alpha[i]) % p;
            }
            system.equations.push_back(std::move(row));
        }
    }
    return system;
}

auto assignment_codeword(const PottsCodeSystem & system, const std::vector<unsigned long> & sigma)
    -> std::vector<unsigned long>
{
    auto n = system.graph.vertex_count();
    if (sigma.size() != n)
        throw PreconditionError(module, "assignment length differs from the vertex count");
    std::vector<unsigned long> x(system.k * n);
    for (Vertex v = 0; v < n; ++v) {
        if (sigma[v] >= system.q)
            throw PreconditionError(module, "colour out of range");
        auto digits = colour_digits(sigma[v], system.p, system.k);
        for (unsigned long i = 0; i < system.k; ++i)
            x[i * n + v] = digits[i];
    }
    std::vector<unsigned long> b;
    for (const auto & row : system.equations) {
        unsigned long sum = 0;
        for (std::size_t c = 0; c < row.size(); ++c)
            sum = (sum + row[c] * x[c]) % system.p;
        b.push_back(sum);
    }
    return b;
}

auto verify_potts_we(const Graph & g, unsigned long p, unsigned long k, const Rational & lambda, bool reversed)
    -> PottsWeightReport
{
    if (lambda <= 0 || lambda >= 1)
        throw PreconditionError(module, "lambda must lie in (0, 1)");
    auto system = build_potts_code(g, p, k, reversed);

    long exponent = static_cast<long>(system.q / p * (p - 1));
    PottsWeightReport report;
    report.q = system.q;
    report.gamma = pow(lambda, -exponent) - 1;
    report.potts = potts_graph(g, PottsParams{system.q, report.gamma});
    report.enumerator = weight_enumerator(system.code(), lambda);
    report.prefactor = system.q * pow(lambda, -exponent * static_cast<long>(g.edge_count()));
    report.pass = report.potts == report.prefactor * report.enumerator;
    return report;
}

}
