#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace covop {

// Exact rationals, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Rational& q);

// Accepts "p", "-p" and "p/q"; the result is canonicalised.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned k);
Integer binomial(unsigned n, unsigned k);

// 2^k for any integer k.
Rational power_of_two(long k);

double to_double(const Rational& q);

}  // namespace covop
