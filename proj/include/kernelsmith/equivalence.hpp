#pragma once

// The relation w ~_r w' over K^d: no test vector beta with entries in K_r and
// ||beta||_1 <= r separates the signs of beta.w and beta.w'.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kernelsmith/numeric.hpp"

namespace kernelsmith {

enum class Domain { Integer, Rational };

std::string to_string(Domain domain);

struct ClassSpec {
  BigInt r;
  Domain domain = Domain::Integer;
  std::size_t d = 1;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Number of canonical test vectors (first nonzero entry positive, zero
// excluded). Throws CapExceeded when it exceeds `cap` or cannot be counted.
std::uint64_t count_test_vectors(const ClassSpec& spec,
                                 std::uint64_t cap = kDefaultEnumerationCap);

// Visits every canonical test vector once; returning false stops the walk.
void for_each_test_vector(const ClassSpec& spec,
                          const std::function<bool(const RatVec&)>& visit,
                          std::uint64_t cap = kDefaultEnumerationCap);

std::vector<RatVec> test_vectors(const ClassSpec& spec,
                                 std::uint64_t cap = kDefaultEnumerationCap);

// First canonical beta on which the two vectors disagree in sign.
std::optional<RatVec> separating_vector(
    const RatVec& w, const RatVec& w2, const ClassSpec& spec,
    std::uint64_t cap = kDefaultEnumerationCap);

bool same_class(const RatVec& w, const RatVec& w2, const ClassSpec& spec,
                std::uint64_t cap = kDefaultEnumerationCap);

struct SignOrderReport {
  bool passed = true;
  bool pairs_checked = false;
  std::vector<std::string> failures;
};

// r >= 1: sign(w_i) = sign(w'_i). r >= 2 additionally:
// sign(w_i - w_j) = sign(w'_i - w'_j).
SignOrderReport check_sign_order(const RatVec& w, const RatVec& w2,
                                 const BigInt& r);

// One linear sign test: sum of coef * w[index].
struct SignTest {
  std::vector<std::pair<std::size_t, int>> terms;
};

// Index of the coordinate holding the distance between two points, or
// nullopt on the diagonal. Must be symmetric.
using PointIndexMap = std::vector<std::vector<std::optional<std::size_t>>>;

// cost_index[i][j]: coordinate of the cost between facility i and client j.
using BipartiteIndexMap = std::vector<std::vector<std::size_t>>;

// Triangle tests d(x,y) + d(y,z) - d(x,z) over all ordered triples.
std::vector<SignTest> triangle_tests(const PointIndexMap& map,
                                     std::size_t d);

// c(i,j') + c(i',j') + c(i',j) - c(i,j) for all facilities i != i' and
// clients j != j'.
std::vector<SignTest> bipartite_metric_tests(const BipartiteIndexMap& map,
                                             std::size_t d);

// Index of the first test whose sign differs, if any.
std::optional<std::size_t> first_sign_mismatch(const RatVec& w,
                                               const RatVec& w2,
                                               const std::vector<SignTest>& tests);

bool check_metric_preserved(const RatVec& w, const RatVec& w2,
                            const PointIndexMap& map);
bool check_metric_preserved(const RatVec& w, const RatVec& w2,
                            const BipartiteIndexMap& map);

// Every test evaluates to a nonnegative value on w.
bool satisfies_all(const RatVec& w, const std::vector<SignTest>& tests);

}  // namespace kernelsmith
