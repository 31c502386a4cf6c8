#pragma once

#include "homred/rational.hpp"

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace homred {

enum class ConstraintKind
{
    Imp,   // x = 1 implies y = 1
    Pin0,  // x = 0
    Pin1   // x = 1
};

struct Constraint
{
    ConstraintKind kind;
    std::size_t x;
    std::size_t y = 0;  // used by Imp only

    auto operator==(const Constraint &) const -> bool = default;
};

// Boolean variables 0..variables-1 with a multiset of constraints. Names are
// optional and only used when writing the instance out.
struct CspInstance
{
    std::size_t variables = 0;
    std::vector<Constraint> constraints;
    std::vector<std::string> names;

    auto add_variable(std::string name = {}) -> std::size_t;
    auto imp(std::size_t x, std::size_t y) -> std::size_t;
    auto pin0(std::size_t x) -> std::size_t;
    auto pin1(std::size_t x) -> std::size_t;

    void validate() const;
};

// weights[x] = (gamma_x(0), gamma_x(1)), all strictly positive.
struct WeightedCspInstance
{
    CspInstance csp;
    std::vector<std::array<Rational, 2>> weights;

    static auto unit(CspInstance csp) -> WeightedCspInstance;

    void validate() const;
};

auto count_csp(const CspInstance & instance) -> Integer;
auto count_wcsp(const WeightedCspInstance & instance) -> Rational;

struct ClearedWeights
{
    WeightedCspInstance instance;
    Integer scale;  // count_wcsp(original) = count_wcsp(instance) / scale
};

// Multiplies each variable's pair by the lcm of its two denominators.
auto clear_denominators(const WeightedCspInstance & instance) -> ClearedWeights;

// Binary expansion of one branch weight: bits[i] is the coefficient of 2^i,
// i = 0..k.
struct BranchBits
{
    std::vector<bool> bits;
    std::size_t min = 0;  // lowest set bit
    std::size_t max = 0;  // highest set bit

    auto set_bits() const -> std::vector<std::size_t>;
    auto next(std::size_t i) const -> std::size_t;  // next set bit above i
    auto prev(std::size_t i) const -> std::size_t;  // previous set bit below i
};

struct BitExpansion
{
    std::size_t k = 0;  // max(ceil lg gamma(0), ceil lg gamma(1))
    // branch[b] expands gamma(1 xor b).
    std::array<BranchBits, 2> branch;
};

// Requires positive integer weights.
auto bit_expansion(const Integer & gamma0, const Integer & gamma1) -> BitExpansion;

// Variables and constraints of the chain gadget A_{x,b,i}.
struct ChainGadget
{
    std::size_t bit = 0;
    std::size_t left = 0;
    std::size_t right = 0;
    std::vector<std::size_t> inner;        // x_{b,i,1..i}
    std::vector<std::size_t> constraints;  // indices into the compiled instance
};

struct BranchLayout
{
    std::vector<ChainGadget> gadgets;     // one per set bit, ascending
    std::vector<std::size_t> links;       // R_i <=> L_next constraints
    std::vector<std::size_t> pins;        // delta_0 on the first L (b = 0) or delta_1 on the last R (b = 1)
};

struct VariableLayout
{
    BitExpansion expansion;
    std::array<BranchLayout, 2> branch;
    std::vector<std::size_t> wiring;  // x <=> R_{x,0,max}, x <=> L_{x,1,min}
};

struct CompiledGadget
{
    CspInstance instance;
    std::vector<VariableLayout> layout;  // per original variable
};

// Unweighted instance whose solution count equals count_wcsp(instance).
// Original variables keep their indices.
auto compile_weight_gadget(const WeightedCspInstance & instance) -> CompiledGadget;

// Instance files. parse_csp rejects `wt` lines; parse_weighted_csp gives
// unlisted variables weight (1, 1).
auto parse_csp(std::string_view text) -> CspInstance;
auto parse_weighted_csp(std::string_view text) -> WeightedCspInstance;
auto write_csp(const CspInstance & instance) -> std::string;
auto write_weighted_csp(const WeightedCspInstance & instance) -> std::string;

}
