#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bcrate {

/// Exact rational number. Always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers are printed as "p/1" so every rational has the same shape.
std::string to_string(const Rational& value);

/// Decimal rendering to `places` digits, for human-facing tables only.
std::string to_decimal(const Rational& value, int places = 4);

Rational make_rational(long num, long den = 1);
Rational make_rational(const BigInt& num, const BigInt& den);

/// Least common multiple of all denominators.
BigInt common_denominator(const std::vector<Rational>& values);

/// Returns 2^-exponent exactly.
Rational inverse_power_of_two(int exponent);

/// Closed interval [lower, upper] of rationals containing an irrational quantity.
struct Enclosure {
  Rational lower;
  Rational upper;
};

/// Encloses base^(num/den) for base >= 1 between consecutive multiples of 1/scale.
Enclosure enclose_power(long base, long num, long den, long scale = 1000000);

/// Encloses log2(value) for value >= 1 between consecutive multiples of 1/scale.
Enclosure enclose_log2(const Rational& value, long scale = 1000);

}  // namespace bcrate
