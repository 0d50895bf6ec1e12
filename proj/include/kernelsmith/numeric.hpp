#pragma once

// Exact integer and rational arithmetic. BigInt and Rational are GMP's
// C++ classes; mpq_class arithmetic keeps every result in lowest terms with
// a positive denominator, so equality and sign are read off the stored form.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kernelsmith {

using BigInt = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<BigInt>;
using RatVec = std::vector<Rational>;

// num/den in lowest terms. Throws InputError when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);

// Parses "p/q" or "p" (optional leading '-' on p). Throws InputError.
Rational parse_rational(std::string_view text);
BigInt parse_bigint(std::string_view text);

// "p/q", or "p" when q == 1; the sign lives on the numerator.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

int signum(const Rational& value);
int signum(const BigInt& value);

// Exact inner products. Throw DimensionMismatch on unequal lengths.
Rational dot(std::span<const Rational> u, std::span<const Rational> v);
Rational dot(std::span<const BigInt> u, std::span<const Rational> v);
BigInt dot(std::span<const BigInt> u, std::span<const BigInt> v);

Rational l1_norm(std::span<const Rational> v);
Rational linf_norm(std::span<const Rational> v);
BigInt l1_norm(std::span<const BigInt> v);
BigInt linf_norm(std::span<const BigInt> v);

RatVec to_rational(std::span<const BigInt> v);
bool is_zero(std::span<const Rational> v);

// Number of bits of |value|; 0 for zero.
std::size_t bit_length(const BigInt& value);
// Encoding length of a rational: bits of |num| plus bits of den when den > 1.
std::size_t bit_length(const Rational& value);
std::size_t max_bit_length(std::span<const Rational> v);
std::size_t max_bit_length(std::span<const BigInt> v);

BigInt pow(const BigInt& base, unsigned long exponent);
BigInt factorial(unsigned long n);
// Least common multiple of all denominators (1 for an empty vector).
BigInt common_denominator(std::span<const Rational> v);

// Converts a BigInt to unsigned long, throwing InputError if it does not fit.
unsigned long to_ulong(const BigInt& value, std::string_view what);

}  // namespace kernelsmith
