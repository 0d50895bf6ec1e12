#include "kernelsmith/numeric.hpp"

#include <algorithm>
#include <cctype>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt parse_bigint(std::string_view text) {
  if (!is_integer_literal(text)) {
    throw InputError("malformed integer: \"" + std::string(text) + "\"");
  }
  return BigInt(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_bigint(text));
  const auto num_text = text.substr(0, slash);
  const auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw InputError("sign must be on the numerator: \"" + std::string(text) +
                     "\"");
  }
  return make_rational(parse_bigint(num_text), parse_bigint(den_text));
}

std::string to_string(const Rational& value) { return value.get_str(10); }
std::string to_string(const BigInt& value) { return value.get_str(10); }

int signum(const Rational& value) { return sgn(value); }
int signum(const BigInt& value) { return sgn(value); }

Rational dot(std::span<const Rational> u, std::span<const Rational> v) {
  if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
  Rational acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (sgn(u[i]) != 0 && sgn(v[i]) != 0) acc += u[i] * v[i];
  }
  return acc;
}

Rational dot(std::span<const BigInt> u, std::span<const Rational> v) {
  if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
  Rational acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (sgn(u[i]) != 0 && sgn(v[i]) != 0) acc += Rational(u[i]) * v[i];
  }
  return acc;
}

BigInt dot(std::span<const BigInt> u, std::span<const BigInt> v) {
  if (u.size() != v.size()) throw DimensionMismatch(u.size(), v.size());
  BigInt acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mpz_addmul(acc.get_mpz_t(), u[i].get_mpz_t(), v[i].get_mpz_t());
  }
  return acc;
}

Rational l1_norm(std::span<const Rational> v) {
  Rational acc = 0;
  for (const auto& x : v) acc += abs(x);
  return acc;
}

Rational linf_norm(std::span<const Rational> v) {
  Rational best = 0;
  for (const auto& x : v) {
    if (abs(x) > best) best = abs(x);
  }
  return best;
}

BigInt l1_norm(std::span<const BigInt> v) {
  BigInt acc = 0;
  for (const auto& x : v) acc += abs(x);
  return acc;
}

BigInt linf_norm(std::span<const BigInt> v) {
  BigInt best = 0;
  for (const auto& x : v) {
    if (mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) > 0) best = abs(x);
  }
  return best;
}

RatVec to_rational(std::span<const BigInt> v) {
  RatVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& x) { return sgn(x) == 0; });
}

std::size_t bit_length(const BigInt& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

std::size_t bit_length(const Rational& value) {
  const std::size_t num_bits = bit_length(BigInt(value.get_num()));
  if (value.get_den() == 1) return num_bits;
  return num_bits + bit_length(BigInt(value.get_den()));
}

std::size_t max_bit_length(std::span<const Rational> v) {
  std::size_t best = 0;
  for (const auto& x : v) best = std::max(best, bit_length(x));
  return best;
}

std::size_t max_bit_length(std::span<const BigInt> v) {
  std::size_t best = 0;
  for (const auto& x : v) best = std::max(best, bit_length(x));
  return best;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt common_denominator(std::span<const Rational> v) {
  BigInt out = 1;
  for (const auto& x : v) {
    mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), x.get_den_mpz_t());
  }
  return out;
}

unsigned long to_ulong(const BigInt& value, std::string_view what) {
  if (value < 0 || !value.fits_ulong_p()) {
    throw InputError(std::string(what) + " out of range: " + to_string(value));
  }
  return value.get_ui();
}

}  // namespace kernelsmith
