#include "homred/rational.hpp"
#include "homred/error.hpp"

#include <cctype>
#include <cstdlib>

namespace homred {

namespace
{
    auto valid_digits(std::string_view text) -> bool
    {
        if (text.starts_with('-') || text.starts_with('+'))
            text.remove_prefix(1);
        if (text.empty())
            return false;
        for (char c : text)
            if (! std::isdigit(static_cast<unsigned char>(c)))
                return false;
        return true;
    }
}

auto parse_integer(std::string_view text) -> Integer
{
    if (! valid_digits(text))
        throw ParseError("rational", 0, "not an integer: '" + std::string(text) + "'");
    std::string owned(text);
    if (owned.starts_with('+'))
        owned.erase(0, 1);
    return Integer(owned, 10);
}

auto parse_rational(std::string_view text) -> Rational
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));

    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (den.starts_with('-') || den.starts_with('+'))
        throw ParseError("rational", 0, "signed denominator in '" + std::string(text) + "'");
    Integer d = parse_integer(den);
    if (d == 0)
        throw ParseError("rational", 0, "zero denominator in '" + std::string(text) + "'");
    Rational result(parse_integer(num), d);
    result.canonicalize();
    return result;
}

auto to_string(const Rational & value) -> std::string
{
    Rational v = value;
    v.canonicalize();
    if (v.get_den() == 1)
        return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

auto to_string(const Integer & value) -> std::string
{
    return value.get_str();
}

auto pow(const Integer & base, unsigned long exponent) -> Integer
{
    Integer result;
    mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
    return result;
}

auto pow(const Rational & base, long exponent) -> Rational
{
    if (exponent >= 0) {
        Rational result(pow(Integer(base.get_num()), static_cast<unsigned long>(exponent)),
                pow(Integer(base.get_den()), static_cast<unsigned long>(exponent)));
        result.canonicalize();
        return result;
    }
    if (base == 0)
        throw PreconditionError("rational", "zero raised to a negative power");
    auto e = static_cast<unsigned long>(-exponent);
    Rational result(pow(Integer(base.get_den()), e), pow(Integer(base.get_num()), e));
    result.canonicalize();
    return result;
}

auto is_integer(const Rational & value) -> bool
{
    return value.get_den() == 1;
}

auto to_integer(const Rational & value) -> Integer
{
    if (! is_integer(value))
        throw PreconditionError("rational", "expected an integer, got " + to_string(value));
    return value.get_num();
}

auto floor(const Rational & value) -> Integer
{
    Integer result;
    mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return result;
}

auto lcm(const Integer & a, const Integer & b) -> Integer
{
    Integer result;
    mpz_lcm(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return result;
}

auto enumeration_cap(unsigned long long fallback) -> unsigned long long
{
    if (const char * env = std::getenv("HOMRED_ENUM_CAP")) {
        char * end = nullptr;
        auto value = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && value > 0)
            return value;
    }
    return fallback;
}

}
