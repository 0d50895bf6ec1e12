#include <chrono>
#include <variant>

#include "kernelsmith/errors.hpp"
#include "kernelsmith/problems.hpp"

namespace kernelsmith {

namespace {

BigInt big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::size_t threshold_bits(const std::optional<Rational>& k) { return k ? bit_length(*k) : 0; }

KernelResult finish(const ProblemInstance& instance, IntVec w, std::optional<BigInt> k,
                    ReductionReport report, const std::optional<Rational>& threshold) {
  KernelResult out{with_weights(instance, to_rational(w)), std::move(k), std::move(report)};
  out.report.problem = problem_tag(instance);
  out.report.bits_in = std::max(max_bit_length(std::span<const Rational>(weight_vector(instance))),
                                threshold_bits(threshold));
  std::size_t bits_out = max_bit_length(std::span<const BigInt>(w));
  if (out.threshold) bits_out = std::max(bits_out, bit_length(*out.threshold));
  out.report.bits_out = bits_out;
  return out;
}

KernelResult kernelize_knapsack(const KnapsackInstance& x, const ReduceOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = x.weights.size();
  const BigInt big_n = big(n + 1);
  auto weights = reduce_with_threshold(x.weights, x.k, big_n, options);
  auto values = reduce_with_threshold(x.values, x.l, big_n, options);
  KnapsackInstance reduced{to_rational(weights.w), to_rational(values.w), Rational(weights.k),
                           Rational(values.k)};
  ReductionReport report = weights.report;
  report.problem = "knapsack";
  report.d = n;
  report.bound = threshold_bound(n, big_n);
  report.verified = std::min(weights.report.verified, values.report.verified);
  report.bits_in = std::max({max_bit_length(std::span<const Rational>(weight_vector(x))),
                             bit_length(x.k), bit_length(x.l)});
  report.bits_out = std::max({max_bit_length(std::span<const BigInt>(weights.w)),
                              max_bit_length(std::span<const BigInt>(values.w)),
                              bit_length(weights.k), bit_length(values.k)});
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {reduced, std::nullopt, report};
}

KernelResult kernelize_raw(const RawVectorInstance& x, const std::optional<Rational>& threshold,
                           const ReduceOptions& options) {
  IntVec w;
  std::optional<BigInt> k;
  ReductionReport report;
  RatVec input = x.w;
  if (threshold) input.push_back(*threshold);
  if (x.domain == Domain::Integer) {
    if (threshold) {
      auto red = reduce_with_threshold(x.w, *threshold, x.n, options);
      w = std::move(red.w);
      k = std::move(red.k);
      report = std::move(red.report);
    } else {
      auto red = reduce(x.w, x.n, options);
      w = std::move(red.w);
      report = std::move(red.report);
    }
  } else {
    auto red = reduce_rational(input, x.n, options);
    if (threshold) {
      k = red.w.back();
      red.w.pop_back();
    }
    w = std::move(red.w);
    report = std::move(red.report);
    report.d = x.w.size();
  }
  KernelResult out = finish(x, std::move(w), std::move(k), std::move(report), threshold);
  return out;
}

}  // namespace

KernelResult kernelize(const ProblemInstance& instance, const std::optional<Rational>& threshold,
                       const ReduceOptions& options) {
  validate(instance);
  if (const auto* x = std::get_if<KnapsackInstance>(&instance)) {
    if (threshold) throw InputError("knapsack carries its thresholds in the instance");
    return kernelize_knapsack(*x, options);
  }
  if (const auto* x = std::get_if<RawVectorInstance>(&instance)) {
    return kernelize_raw(*x, threshold, options);
  }
  if (const auto* x = std::get_if<PvcInstance>(&instance)) {
    KernelResult out = kernelize(pvc_to_pvc2(*x), threshold, options);
    const auto& reduced = std::get<Pvc2Instance>(out.reduced);
    out.reduced = PvcInstance{reduced.graph, reduced.w};
    out.report.problem = "pvc";
    return out;
  }

  const GoalSpec goal = build_goal_expr(instance);
  const std::size_t d = goal.d;
  if (!threshold) {
    // Plain comparison-preserving reductions with the per-problem class.
    if (const auto* x = std::get_if<MpscInstance>(&instance)) {
      auto red = reduce(goal.weights, big(2 * x->graph.edges.size()), options);
      red.report.alpha = alpha(goal.expr);
      return finish(instance, std::move(red.w), std::nullopt, std::move(red.report), threshold);
    }
    if (const auto* x = std::get_if<SseInstance>(&instance)) {
      const std::size_t n = x->graph.n;
      auto red = reduce_rational(goal.weights, big(n * n * d), options);
      red.report.alpha = alpha(goal.expr);
      return finish(instance, std::move(red.w), std::nullopt, std::move(red.report), threshold);
    }
  }
  ShrinkResult shrunk = domain(goal.expr) == Domain::Integer
                            ? shrink_z(goal.expr, goal.weights, threshold, options)
                            : shrink_q(goal.expr, goal.weights, threshold, options);
  return finish(instance, std::move(shrunk.w), std::move(shrunk.k), std::move(shrunk.report),
                threshold);
}

}  // namespace kernelsmith
