#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace crossint {

// Exact integer and rational types. Rational values are always kept in
// lowest terms with a positive denominator (canonical form).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Binomial coefficient, exact for any size. Returns 0 when k < 0 or k > n
// (the usual convention, relied on by the bound formulas). n must be >= 0.
BigInt binomial(long n, long k);

// Fast exact path for n <= 64 (table-backed; every such value fits uint64).
std::uint64_t binomial_u64(int n, int k);

// Canonical fraction rendering: "p" when the denominator is 1, else "p/q".
// No floats cross any interface; this is the only rational wire format.
std::string fraction_str(const Rational& value);

// Parses "p" or "p/q" (optional leading '-', no whitespace). Throws
// ValidationError on malformed input or zero denominator.
Rational parse_fraction(std::string_view text);

}  // namespace crossint
