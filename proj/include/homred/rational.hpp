#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace homred {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "a/b" or "a" (optional leading '-'); the result is canonical.
auto parse_rational(std::string_view text) -> Rational;
auto parse_integer(std::string_view text) -> Integer;

// Lowest terms, positive denominator; integers print without "/1".
auto to_string(const Rational & value) -> std::string;
auto to_string(const Integer & value) -> std::string;

auto pow(const Integer & base, unsigned long exponent) -> Integer;

// Exact power with a possibly negative exponent. Throws on 0^negative.
auto pow(const Rational & base, long exponent) -> Rational;

auto is_integer(const Rational & value) -> bool;

// Requires is_integer(value).
auto to_integer(const Rational & value) -> Integer;

auto floor(const Rational & value) -> Integer;

auto lcm(const Integer & a, const Integer & b) -> Integer;

// Reads HOMRED_ENUM_CAP if set, otherwise returns fallback.
auto enumeration_cap(unsigned long long fallback) -> unsigned long long;

}
