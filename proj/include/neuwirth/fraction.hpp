#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace nw {

using BigInt = boost::multiprecision::cpp_int;
using Fraction = boost::multiprecision::cpp_rational;

// Terms (a_1, ..., a_n) of the continued fraction a_n + 1/(a_{n-1} + ... + 1/a_1).
// a_1 is the innermost twist, a_n the outermost.
struct ContinuedFraction {
    std::vector<BigInt> terms;

    bool is_standard() const;
    bool operator==(const ContinuedFraction&) const = default;
};

Fraction make_fraction(const BigInt& num, const BigInt& den);
BigInt numerator(const Fraction& q);
BigInt denominator(const Fraction& q);
BigInt floor_of(const Fraction& q);
BigInt ceil_of(const Fraction& q);
bool is_integer(const Fraction& q);

std::string to_string(const Fraction& q);
std::string to_string(const ContinuedFraction& cf);

// Accepts "p", "p/q", "-p/q" with optional surrounding spaces.
Fraction parse_fraction(std::string_view text);

Fraction fraction_of(const ContinuedFraction& cf);
ContinuedFraction standard_cf(const Fraction& q);

Fraction sum_slope(const Fraction& a, const Fraction& b);
Fraction rotate_slope(const Fraction& a);

}  // namespace nw
