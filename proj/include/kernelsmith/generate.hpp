#pragma once

// Deterministic pseudo-random instances.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "kernelsmith/problems.hpp"

namespace kernelsmith {

// Reproducible across platforms: only the raw 64-bit engine output is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  BigInt below(const BigInt& bound);
  // Uniform in [0, 2^bits).
  BigInt bits(std::size_t bits);
  bool coin() { return (next() & 1U) != 0; }

 private:
  std::mt19937_64 engine_;
};

struct GenerateOptions {
  std::size_t n = 5;             // vertices, items, jobs, clients, voters, dimension
  std::optional<std::size_t> m;  // edges, facilities, alternatives
  std::size_t bits = 32;         // weights drawn from [0, 2^bits)
  std::uint64_t seed = 1;
  bool metric = false;           // UFLP: costs from grid points under L1
  std::size_t k = 1;             // RPP vehicles, C4U committee size
  std::size_t required = 2;      // RPP required edges
  BigInt class_param = 4;        // raw vectors: N or r
  Domain domain = Domain::Integer;
};

// Throws InputError for impossible size combinations.
ProblemInstance generate_instance(const std::string& tag, const GenerateOptions& options);

// Random connected simple graph with n vertices and m edges.
Graph random_connected_graph(Rng& rng, std::size_t n, std::size_t m);
// Random simple graph with n vertices and m edges.
Graph random_graph(Rng& rng, std::size_t n, std::size_t m);

const std::vector<std::string>& problem_tags();

}  // namespace kernelsmith
