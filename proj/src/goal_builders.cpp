#include <variant>

#include "kernelsmith/errors.hpp"
#include "kernelsmith/problems.hpp"

namespace kernelsmith {

namespace {

BigInt big(std::size_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::size_t top(const Env& env, std::size_t depth = 0) {
  return static_cast<std::size_t>(env[env.size() - 1 - depth]);
}

LinExpr bound_coord(std::size_t offset) {
  return coord([offset](const Solution&, const Env& env) { return offset + top(env); });
}

std::vector<Member> each_index(std::size_t n) {
  std::vector<Member> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({0, static_cast<long>(i)});
  return out;
}

std::vector<Member> each_listed(const Solution& x) {
  std::vector<Member> out;
  for (long v : x) out.push_back({0, v});
  return out;
}

// sum_{i in x} w_{offset+i}
LinExpr additive(std::size_t n, std::size_t offset) {
  return sum_over(big(n), {bound_coord(offset)},
                  [](const Solution& x, const Env&) { return each_listed(x); });
}

// C_j - d_j = sum_{i before or at j} p_i - d_j, over the job order x.
LinExpr lateness(std::size_t n, std::size_t p_offset, std::size_t d_offset) {
  auto minus_due = scale(Domain::Integer, 1, [](const Solution&, const Env&) { return Rational(-1); },
                         bound_coord(d_offset));
  return sum_over(big(n + 1), {bound_coord(p_offset), minus_due},
                  [](const Solution& x, const Env& env) {
                    const long j = env.back();
                    std::vector<Member> out;
                    for (long i : x) {
                      out.push_back({0, i});
                      if (i == j) break;
                    }
                    out.push_back({1, j});
                    return out;
                  });
}

GoalSpec wis_goal(const WisInstance& x) {
  return {additive(x.graph.n, 0), x.w, x.w.size()};
}

GoalSpec knapsack_goal(const KnapsackInstance& x) {
  const std::size_t n = x.weights.size();
  const RatVec w = weight_vector(x);
  return {additive(n, n), w, w.size()};
}

GoalSpec mpsc_goal(const MpscInstance& x) {
  const Graph g = x.graph;
  auto power = max_over(big(g.edges.size()), {bound_coord(0)},
                        [g](const Solution& s, const Env& env) {
                          const std::size_t v = top(env);
                          std::vector<Member> out;
                          for (long e : s) {
                            if (g.edges[e].u == v || g.edges[e].v == v) out.push_back({0, e});
                          }
                          return out;
                        });
  auto total = sum_over(big(g.n), {power},
                        [n = g.n](const Solution&, const Env&) { return each_index(n); });
  return {total, x.w, x.w.size()};
}

GoalSpec sse_goal(const SseInstance& x) {
  const Graph g = x.graph;
  auto cut = sum_over(big(g.edges.size()), {bound_coord(0)},
                      [g](const Solution& s, const Env&) {
                        std::vector<bool> in(g.n, false);
                        for (long v : s) in[v] = true;
                        std::vector<Member> out;
                        for (std::size_t e = 0; e < g.edges.size(); ++e) {
                          if (in[g.edges[e].u] != in[g.edges[e].v]) out.push_back({0, static_cast<long>(e)});
                        }
                        return out;
                      });
  auto ratio = scale(Domain::Rational, big(g.n),
                     [](const Solution& s, const Env&) {
                       return Rational(1, static_cast<long>(s.size()));
                     },
                     cut);
  return {ratio, x.w, x.w.size()};
}

GoalSpec uflp_goal(const UflpInstance& x) {
  const std::size_t m = x.facilities;
  const std::size_t n = x.clients;
  auto open = additive(m, 0);
  auto cost = coord([m, n](const Solution&, const Env& env) { return m + top(env) * n + top(env, 1); });
  auto nearest = min_over(big(m), {cost}, [](const Solution& s, const Env&) { return each_listed(s); });
  auto serve = sum_over(big(n), {nearest}, [n](const Solution&, const Env&) { return each_index(n); });
  const BigInt part = big(2 * n + m);
  auto total = sum_over(2, {lift(part, open), lift(part, serve)},
                        [](const Solution&, const Env&) {
                          return std::vector<Member>{{0, 0}, {1, 1}};
                        });
  const RatVec w = weight_vector(x);
  return {total, w, w.size()};
}

GoalSpec wtardy_goal(const WTardyInstance& x) {
  const std::size_t n = x.p.size();
  auto tardy = piecewise(lateness(n, n, 2 * n), zero(), bound_coord(0));
  auto total = sum_over(big(n), {tardy}, [n](const Solution&, const Env&) { return each_index(n); });
  const RatVec w = weight_vector(x);
  return {total, w, w.size()};
}

GoalSpec tardiness_goal(const TotalTardinessInstance& x) {
  const std::size_t n = x.p.size();
  auto late = max_over(2, {zero(), lateness(n, 0, n)},
                       [](const Solution&, const Env& env) {
                         return std::vector<Member>{{0, env.back()}, {1, env.back()}};
                       });
  auto total = sum_over(big(n), {late}, [n](const Solution&, const Env&) { return each_index(n); });
  const RatVec w = weight_vector(x);
  return {total, w, w.size()};
}

GoalSpec rpp_goal(const RppInstance& x) {
  const std::size_t m = x.graph.edges.size();
  auto multiplicity = [m](const Solution& s, const Env& env) {
    long mult = s[top(env, 1) * m + top(env)];
    if (mult >= 3) mult -= 2 * ((mult - 1) / 2);
    return Rational(mult);
  };
  auto walk = sum_over(big(m), {scale(Domain::Integer, 2, multiplicity, bound_coord(0))},
                       [m](const Solution& s, const Env& env) {
                         const std::size_t i = top(env);
                         std::vector<Member> out;
                         for (std::size_t e = 0; e < m; ++e) {
                           if (s[i * m + e] > 0) out.push_back({0, static_cast<long>(e)});
                         }
                         return out;
                       });
  auto worst = max_over(big(x.k), {walk}, [k = x.k](const Solution&, const Env&) { return each_index(k); });
  return {worst, x.c, x.c.size()};
}

GoalSpec pvc2_goal(const Graph& g, const RatVec& w) {
  auto total = sum_over(big(g.n), {bound_coord(0)},
                        [](const Solution& mu, const Env&) {
                          std::vector<Member> out;
                          for (long e : mu) {
                            if (e >= 0) out.push_back({0, e});
                          }
                          return out;
                        });
  return {total, w, w.size()};
}

GoalSpec c4u_goal(const C4uInstance& x) {
  const std::size_t m = x.alternatives;
  auto utility = coord([m](const Solution&, const Env& env) { return top(env, 1) * m + top(env); });
  auto best = max_over(big(m), {utility}, [](const Solution& s, const Env&) { return each_listed(s); });
  auto total = sum_over(big(x.voters), {best},
                        [n = x.voters](const Solution&, const Env&) { return each_index(n); });
  const RatVec w = weight_vector(x);
  return {total, w, w.size()};
}

}  // namespace

GoalSpec build_goal_expr(const ProblemInstance& instance) {
  validate(instance);
  if (const auto* x = std::get_if<WisInstance>(&instance)) return wis_goal(*x);
  if (const auto* x = std::get_if<KnapsackInstance>(&instance)) return knapsack_goal(*x);
  if (const auto* x = std::get_if<MpscInstance>(&instance)) return mpsc_goal(*x);
  if (const auto* x = std::get_if<SseInstance>(&instance)) return sse_goal(*x);
  if (const auto* x = std::get_if<UflpInstance>(&instance)) return uflp_goal(*x);
  if (const auto* x = std::get_if<WTardyInstance>(&instance)) return wtardy_goal(*x);
  if (const auto* x = std::get_if<TotalTardinessInstance>(&instance)) return tardiness_goal(*x);
  if (const auto* x = std::get_if<RppInstance>(&instance)) return rpp_goal(*x);
  if (const auto* x = std::get_if<PvcInstance>(&instance)) return pvc2_goal(x->graph, x->w);
  if (const auto* x = std::get_if<Pvc2Instance>(&instance)) return pvc2_goal(x->graph, x->w);
  if (const auto* x = std::get_if<C4uInstance>(&instance)) return c4u_goal(*x);
  throw InputError("raw vectors have no goal expression");
}

}  // namespace kernelsmith
