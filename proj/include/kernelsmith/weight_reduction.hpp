#pragma once

// Replacing a rational weight vector by a small integer vector of the same
// equivalence class.

#include <cstdint>
#include <optional>
#include <string>

#include "kernelsmith/equivalence.hpp"
#include "kernelsmith/numeric.hpp"

namespace kernelsmith {

// 2^pow2 * base^exponent, kept symbolic until a comparison needs digits.
struct BoundExpr {
  BigInt pow2 = 0;
  BigInt base = 1;
  BigInt exponent = 0;

  // Floor of log2 of the value, or an upper estimate when not exact.
  BigInt approx_bits() const;
  // |value| <= bound, decided exactly.
  bool admits(const BigInt& value) const;
  // The decimal value, when the bound has at most `max_bits` bits.
  std::optional<BigInt> materialize(std::uint64_t max_bits = 100000) const;
  std::string symbolic() const;
};

BoundExpr reduce_bound(std::size_t d, const BigInt& n);
BoundExpr threshold_bound(std::size_t d, const BigInt& n);
BoundExpr rational_bound(std::size_t d, const BigInt& r);

enum class VerificationLevel { None, SignOrder, Exhaustive };
std::string to_string(VerificationLevel level);

struct ReductionReport {
  std::string problem;
  std::size_t d = 0;
  std::optional<BigInt> n;      // N of the integer class
  std::optional<BigInt> r;      // r of the rational class
  std::optional<BigInt> alpha;  // linearizability constant, if any
  BoundExpr bound;
  std::size_t bits_in = 0;
  std::size_t bits_out = 0;
  double elapsed_seconds = 0;
  VerificationLevel verified = VerificationLevel::None;
};

struct ReduceOptions {
  // Exhaustive class check after reducing, when the number of test vectors
  // is at most this. Zero disables it.
  std::uint64_t exhaustive_cap = 200000;
};

struct Reduction {
  IntVec w;
  ReductionReport report;
};

struct ThresholdReduction {
  IntVec w;
  BigInt k;
  ReductionReport report;
};

// Integer vector in the class of w for all integer tests with l1 norm <= n.
Reduction reduce(const RatVec& w, const BigInt& n,
                 const ReduceOptions& options = {});

// Reduces w with k appended; w.b <= k iff w'.b <= k' for ||b||_1 <= n - 1.
ThresholdReduction reduce_with_threshold(const RatVec& w, const Rational& k,
                                         const BigInt& n,
                                         const ReduceOptions& options = {});

// Integer vector in the class of w over rational tests with parameter r.
Reduction reduce_rational(const RatVec& w, const BigInt& r,
                          const ReduceOptions& options = {});

// Lexicographically smallest vector of minimum max-norm in the class, by
// exhaustive search. Requires d <= 4 and n <= 6.
IntVec reduce_bruteforce(const RatVec& w, const BigInt& n,
                         std::uint64_t cap = 10'000'000);

}  // namespace kernelsmith
