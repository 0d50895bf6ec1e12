#pragma once

// Integral LLL reduction and simultaneous Diophantine approximation.

#include <vector>

#include "kernelsmith/numeric.hpp"

namespace kernelsmith {

// Rows are lattice generators; they must be linearly independent.
using Basis = std::vector<IntVec>;

// LLL-reduces `basis` with Lovász parameter `delta` (1/4 < delta < 1).
// Throws InputError on dependent rows, ragged rows or bad delta.
Basis lll_reduce(Basis basis, const Rational& delta = Rational(3, 4));

// Independent predicate: exact rational Gram-Schmidt, then size reduction
// (|mu_ij| <= 1/2) and the Lovász condition with `delta`.
bool is_lll_reduced(const Basis& basis, const Rational& delta = Rational(3, 4));

// Whether v is an integer combination of the rows of `basis`.
bool in_lattice(const Basis& basis, const IntVec& v);

// Both bases generate the same lattice.
bool same_lattice(const Basis& a, const Basis& b);

struct Approximation {
  BigInt q;
  IntVec p;
};

// Finds q >= 1 and integers p with |q*a_i - p_i| <= eps for every i and
// q <= 2^{n(n+3)/4} * eps^{-n}. Requires |a_i| <= 1 and 0 < eps < 1.
Approximation simultaneous_approx(const RatVec& a, const Rational& eps);

// q^4 <= 2^{n(n+3)} * eps^{-4n}, evaluated exactly.
bool within_sda_bound(const BigInt& q, std::size_t n, const Rational& eps);

}  // namespace kernelsmith
