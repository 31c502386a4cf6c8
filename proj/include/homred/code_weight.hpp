#pragma once

#include "homred/graph.hpp"
#include "homred/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace homred {

using Matrix = std::vector<std::vector<unsigned long>>;

// Generating matrix over F_p; the code is its row space.
struct LinearCode
{
    unsigned long p = 2;
    std::size_t length = 0;
    Matrix rows;

    // Throws PreconditionError if p is not prime, a row has the wrong
    // length or an entry lies outside [0, p).
    void validate() const;
};

auto is_prime(unsigned long p) -> bool;

auto parse_code(std::string_view text) -> LinearCode;
auto write_code(const LinearCode & code) -> std::string;

// Reduced row echelon basis of the row space.
auto row_basis(const LinearCode & code) -> Matrix;

// sum over distinct codewords c of lambda^{wt(c)}, enumerating the p^rank
// combinations of a basis. Refuses beyond the enumeration cap.
auto weight_enumerator(const LinearCode & code, const Rational & lambda) -> Rational;

// The equation system for a graph: columns (i, v) -> i n + v for i in [k];
// rows (e, j) -> e q + j where form j has coefficients given by the base-p
// digits of j (least significant first). Edges are oriented low -> high, or
// high -> low when `reversed`.
struct PottsCodeSystem
{
    Graph graph;
    unsigned long p = 2;
    unsigned long k = 1;
    unsigned long q = 2;
    bool reversed = false;
    std::vector<std::vector<unsigned long>> forms;
    Matrix equations;  // qm x kn

    // The code spanned by the columns of the equation matrix, as a generating
    // matrix with one row per column.
    auto code() const -> LinearCode;
};

// Requires G connected and p prime.
auto build_potts_code(const Graph & g, unsigned long p, unsigned long k, bool reversed = false) -> PottsCodeSystem;

// phi(c): base-p digits of c (0-based colour), least significant first.
auto colour_digits(unsigned long c, unsigned long p, unsigned long k) -> std::vector<unsigned long>;

// b(sigma-hat) for the assignment induced by sigma: V -> [q] (0-based colours).
auto assignment_codeword(const PottsCodeSystem & system, const std::vector<unsigned long> & sigma)
    -> std::vector<unsigned long>;

struct PottsWeightReport
{
    unsigned long q = 0;
    Rational gamma;
    Rational potts;       // Z_Potts(G; q, gamma)
    Rational enumerator;  // W_M(lambda)
    Rational prefactor;   // q lambda^{-(p-1) p^{k-1} m}
    bool pass = false;
};

// Checks Z_Potts(G; p^k, gamma) = q lambda^{-(p-1) p^{k-1} m} W_M(lambda) with
// gamma = lambda^{-(p-1) p^{k-1}} - 1. Requires 0 < lambda < 1.
auto verify_potts_we(const Graph & g, unsigned long p, unsigned long k, const Rational & lambda, bool reversed = false)
    -> PottsWeightReport;

}
