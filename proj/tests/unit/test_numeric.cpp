#include <gtest/gtest.h>

#include "kernelsmith/errors.hpp"
#include "kernelsmith/numeric.hpp"

namespace ks = kernelsmith;
using ks::BigInt;
using ks::Rational;

TEST(Numeric, FractionArithmetic) {
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(ks::to_string(Rational(0) * Rational(7, 3)), "0");
  EXPECT_EQ(ks::make_rational(2, 4), Rational(1, 2));
  EXPECT_EQ(cmp(ks::make_rational(2, 4), Rational(1, 2)), 0);
}

TEST(Numeric, ParseAndPrint) {
  EXPECT_EQ(ks::parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(ks::to_string(ks::parse_rational("-6/4")), "-3/2");
  EXPECT_EQ(ks::to_string(ks::parse_rational("10/5")), "2");
  EXPECT_EQ(ks::to_string(ks::parse_rational("0/9")), "0");
  EXPECT_THROW(ks::parse_rational("1/0"), ks::InputError);
  EXPECT_THROW(ks::parse_rational("1/-2"), ks::InputError);
  EXPECT_THROW(ks::parse_rational("abc"), ks::InputError);
  EXPECT_THROW(ks::parse_rational("1.5"), ks::InputError);
  EXPECT_THROW(ks::parse_rational(""), ks::InputError);
}

TEST(Numeric, ZeroIsCanonical) {
  const Rational z = ks::make_rational(0, -5);
  EXPECT_EQ(z.get_den(), 1);
  EXPECT_EQ(ks::signum(z), 0);
}

TEST(Numeric, Signum) {
  EXPECT_EQ(ks::signum(Rational(3, 7)), 1);
  EXPECT_EQ(ks::signum(Rational(0)), 0);
  EXPECT_EQ(ks::signum(Rational(-5, 2)), -1);
}

TEST(Numeric, Dot) {
  const ks::RatVec u = {3, 8, 7, 1, 2, 10};
  const ks::RatVec v = {2, 0, 0, 1, 1, 0};
  EXPECT_EQ(ks::dot(u, v), Rational(9));
  EXPECT_EQ(ks::dot(u, ks::RatVec(6, Rational(0))), Rational(0));
  EXPECT_EQ(ks::dot(ks::RatVec{1, -1}, ks::RatVec{1, 1}), Rational(0));
  EXPECT_THROW(ks::dot(ks::RatVec{1}, ks::RatVec{1, 2}), ks::DimensionMismatch);
}

TEST(Numeric, Norms) {
  const ks::RatVec v = {3, -8, 7};
  EXPECT_EQ(ks::l1_norm(v), Rational(18));
  EXPECT_EQ(ks::linf_norm(v), Rational(8));
  EXPECT_EQ(ks::l1_norm(ks::RatVec(3, Rational(0))), Rational(0));
  EXPECT_EQ(ks::l1_norm(ks::RatVec{Rational(1, 2), Rational(1, 3)}), Rational(5, 6));
}

TEST(Numeric, WideOperands) {
  const BigInt a = ks::pow(BigInt(3), 3000);  // ~4755 bits
  const BigInt b = ks::pow(BigInt(7), 1500);
  EXPECT_GE(ks::bit_length(a), 4096u);
  const BigInt prod = a * b;
  EXPECT_EQ(prod / b, a);
  EXPECT_EQ(prod % a, 0);
  const Rational q = Rational(a, b) + Rational(b, a);
  EXPECT_EQ(q * Rational(a * b), Rational(a * a + b * b));
}

TEST(Numeric, Laws) {
  const ks::RatVec xs = {Rational(-7, 3), Rational(0), Rational(5, 11), Rational(9)};
  for (const auto& a : xs) {
    for (const auto& b : xs) {
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(ks::signum(Rational(a * b)), ks::signum(a) * ks::signum(b));
      for (const auto& c : xs) EXPECT_EQ((a * b) * c, a * (b * c));
    }
  }
  const ks::RatVec u = {1, Rational(-2, 3)};
  const ks::RatVec v = {Rational(1, 5), 4};
  const ks::RatVec v2 = {Rational(-3), Rational(1, 7)};
  ks::RatVec sum = {v[0] + v2[0], v[1] + v2[1]};
  EXPECT_EQ(ks::dot(u, sum), ks::dot(u, v) + ks::dot(u, v2));
}

TEST(Numeric, BitLengths) {
  EXPECT_EQ(ks::bit_length(BigInt(0)), 0u);
  EXPECT_EQ(ks::bit_length(BigInt(-8)), 4u);
  EXPECT_EQ(ks::bit_length(Rational(3, 4)), 5u);
  EXPECT_EQ(ks::common_denominator(ks::RatVec{Rational(1, 4), Rational(5, 6)}), 12);
  EXPECT_EQ(ks::factorial(5), 120);
}
