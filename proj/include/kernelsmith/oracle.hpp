#pragma once

// Exhaustive solvers and verifiers for small instances.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kernelsmith/equivalence.hpp"
#include "kernelsmith/problems.hpp"

namespace kernelsmith {

struct OracleCaps {
  std::size_t subset_ground = 16;     // vertices, edges, items or facilities
  std::size_t permutation_jobs = 8;
  std::size_t rpp_required = 4;
  std::size_t rpp_vehicles = 2;
  std::size_t rpp_edges = 10;
  std::uint64_t assignments = 10'000'000;  // PVC (m+1)^n, RPP walk tuples
};

struct OptimaReport {
  std::optional<Rational> value;  // nullopt when nothing is feasible
  std::vector<Solution> optima;   // canonical encodings, sorted
  std::uint64_t enumerated = 0;   // structural candidates visited
};

// Visits every structurally valid solution encoding, in a fixed order.
// Weight-dependent feasibility (capacity, coverage) is not filtered.
void for_each_candidate(const ProblemInstance& instance, const OracleCaps& caps,
                        const std::function<void(const Solution&)>& visit);

OptimaReport brute_force(const ProblemInstance& instance, const OracleCaps& caps = {});

struct ThresholdPair {
  Rational original;
  Rational reduced;
};

struct VerifyReport {
  bool passed = true;
  std::string diff;                 // empty when passed
  std::optional<Solution> witness;  // a solution the two instances disagree on
  std::uint64_t enumerated = 0;
};

// Optimal sets equal, feasibility equal, and with thresholds every
// feasible value compares to k exactly as its reduced value compares to k'.
VerifyReport verify_kernel(const ProblemInstance& original, const ProblemInstance& reduced,
                           const std::optional<ThresholdPair>& thresholds = std::nullopt,
                           const OracleCaps& caps = {});

bool verify_class(const RatVec& w, const RatVec& w2, const ClassSpec& spec,
                  std::uint64_t cap = kDefaultEnumerationCap);

// Min-max optimum computed from required-edge plans and shortest paths;
// independent of walk enumeration, so it also handles dense graphs.
std::optional<Rational> rpp_optimum_value(const RppInstance& instance,
                                          const OracleCaps& caps = {});

std::string format_solution(const Solution& s);

}  // namespace kernelsmith
