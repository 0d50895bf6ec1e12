#pragma once

// Problem encodings, goal expressions and kernelization drivers.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kernelsmith/linearizable.hpp"
#include "kernelsmith/numeric.hpp"
#include "kernelsmith/weight_reduction.hpp"

namespace kernelsmith {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  bool operator==(const Edge&) const = default;
};

struct Graph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  bool operator==(const Graph&) const = default;
};

// Weighted independent set; w on vertices.
struct WisInstance {
  Graph graph;
  RatVec w;
  bool operator==(const WisInstance&) const = default;
};

// Subset with total weight <= k and total value >= l.
struct KnapsackInstance {
  RatVec weights;
  RatVec values;
  Rational k;
  Rational l;
  bool operator==(const KnapsackInstance&) const = default;
};

// Min-power connected spanning subgraph; w on edges.
struct MpscInstance {
  Graph graph;
  RatVec w;
  bool operator==(const MpscInstance&) const = default;
};

// Small set expansion: min over 1 <= |S| <= n/2 of cut weight / |S|.
struct SseInstance {
  Graph graph;
  RatVec w;
  bool operator==(const SseInstance&) const = default;
};

// Uncapacitated facility location; cost[i][j] for facility i, client j.
struct UflpInstance {
  std::size_t clients = 0;
  std::size_t facilities = 0;
  RatVec opening;
  std::vector<RatVec> cost;
  bool metric = false;
  bool operator==(const UflpInstance&) const = default;
};

// Single machine, weighted number of tardy jobs.
struct WTardyInstance {
  RatVec p;
  RatVec d;
  RatVec w;
  bool operator==(const WTardyInstance&) const = default;
};

// Single machine, total tardiness.
struct TotalTardinessInstance {
  RatVec p;
  RatVec d;
  bool operator==(const TotalTardinessInstance&) const = default;
};

// Min-max k-rural postman; c on edges, required edge indices, k vehicles.
struct RppInstance {
  Graph graph;
  RatVec c;
  std::vector<std::size_t> required;
  std::size_t k = 1;
  bool operator==(const RppInstance&) const = default;
};

// Power vertex cover.
struct PvcInstance {
  Graph graph;
  RatVec w;
  bool operator==(const PvcInstance&) const = default;
};

// Power vertex cover over assignments V -> E u {none}; w(none) = 0.
struct Pvc2Instance {
  Graph graph;
  RatVec w;
  bool operator==(const Pvc2Instance&) const = default;
};

// Chamberlin-Courant with cardinal utilities; u[v][a], committee size k.
struct C4uInstance {
  std::size_t voters = 0;
  std::size_t alternatives = 0;
  std::vector<RatVec> u;
  std::size_t k = 1;
  bool operator==(const C4uInstance&) const = default;
};

// A bare weight vector with its class parameters.
struct RawVectorInstance {
  RatVec w;
  BigInt n = 1;  // N for the integer domain, r for the rational domain
  Domain domain = Domain::Integer;
  bool operator==(const RawVectorInstance&) const = default;
};

using ProblemInstance =
    std::variant<WisInstance, KnapsackInstance, MpscInstance, SseInstance, UflpInstance,
                 WTardyInstance, TotalTardinessInstance, RppInstance, PvcInstance,
                 Pvc2Instance, C4uInstance, RawVectorInstance>;

// "wis", "knapsack", ..., "raw-vector".
std::string problem_tag(const ProblemInstance& instance);

enum class Sense { Minimize, Maximize };
Sense objective_sense(const ProblemInstance& instance);

// Throws InputError naming the violated invariant.
void validate(const ProblemInstance& instance);

// Weight vector in coordinate order of the goal expression.
RatVec weight_vector(const ProblemInstance& instance);
// Same structure with the weight vector replaced.
ProblemInstance with_weights(const ProblemInstance& instance, const RatVec& w);

struct GoalSpec {
  LinExpr expr;
  RatVec weights;
  std::size_t d = 0;
};

// Goal function as an expression over weight_vector(instance). Knapsack
// yields its value side. Not available for raw vectors.
GoalSpec build_goal_expr(const ProblemInstance& instance);

// Exact goal value; throws InputError naming the violated constraint when
// the solution is infeasible.
Rational solution_value(const ProblemInstance& instance, const Solution& solution);
// nullopt when infeasible.
std::optional<Rational> try_solution_value(const ProblemInstance& instance,
                                           const Solution& solution);

struct KernelResult {
  ProblemInstance reduced;
  std::optional<BigInt> threshold;
  ReductionReport report;
};

KernelResult kernelize(const ProblemInstance& instance,
                       const std::optional<Rational>& threshold = std::nullopt,
                       const ReduceOptions& options = {});

Pvc2Instance pvc_to_pvc2(const PvcInstance& instance);
// Vertex values of a PVC2 assignment (edge index or -1 per vertex).
RatVec pvc2_assignment_to_pvc(const Pvc2Instance& instance, const Solution& mu);
// Cost of a PVC vertex assignment; throws if some edge is uncovered.
Rational pvc_assignment_cost(const PvcInstance& instance, const RatVec& mu);

struct RppShortcut {
  RppInstance reduced;
  std::vector<std::size_t> kept;  // reduced vertex -> original vertex
  // Original walk (multiplicities per original edge) expanded from each
  // reduced edge.
  std::vector<std::vector<long>> expansion;
  // Original edge index -> reduced edge index for required edges.
  std::vector<std::optional<std::size_t>> required_image;
};

RppShortcut rpp_shortcut(const RppInstance& instance);

// Lifts a reduced solution (k blocks of reduced-edge multiplicities) to the
// original graph; cost never increases.
Solution rpp_lift_solution(const RppShortcut& shortcut, const RppInstance& original,
                           const Solution& reduced_solution);
// Projects an original solution onto the reduced graph; cost never increases.
Solution rpp_project_solution(const RppShortcut& shortcut, const RppInstance& original,
                              const Solution& solution);

// All-pairs shortest path lengths under c.
std::vector<std::vector<std::optional<Rational>>> shortest_paths(const Graph& g,
                                                                 const RatVec& c);

// Drops pairs of repeated traversals so each multiplicity is at most 2.
Solution canonicalize_rpp(const Solution& solution);

}  // namespace kernelsmith
