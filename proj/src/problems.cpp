#include "kernelsmith/problems.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void fail(const std::string& message) { throw InputError(message); }

void check_size(std::size_t got, std::size_t want, const std::string& what) {
  if (got != want) {
    fail(what + " has " + std::to_string(got) + " entries, expected " + std::to_string(want));
  }
}

void check_nonnegative(const RatVec& v, const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) < 0) fail(what + " entry " + std::to_string(i) + " is negative");
  }
}

void check_graph(const Graph& g) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    if (u >= g.n || v >= g.n) fail("edge " + std::to_string(e) + " has a vertex out of range");
    if (u == v) fail("edge " + std::to_string(e) + " is a self-loop");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      fail("edge " + std::to_string(e) + " duplicates an earlier edge");
    }
  }
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

bool connected(const Graph& g, const std::vector<std::size_t>& edge_subset) {
  if (g.n == 0) return true;
  UnionFind uf(g.n);
  std::size_t components = g.n;
  for (auto e : edge_subset) {
    if (uf.unite(g.edges[e].u, g.edges[e].v)) --components;
  }
  return components == 1;
}

// Sorted, distinct, each < limit.
std::vector<std::size_t> as_index_set(const Solution& s, std::size_t limit,
                                      const std::string& what) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (s[t] < 0 || static_cast<std::size_t>(s[t]) >= limit) {
      fail(what + " index " + std::to_string(s[t]) + " out of range");
    }
    if (t > 0 && s[t] <= s[t - 1]) fail(what + " list must be strictly increasing");
    out.push_back(static_cast<std::size_t>(s[t]));
  }
  return out;
}

std::vector<std::size_t> as_permutation(const Solution& s, std::size_t n) {
  check_size(s.size(), n, "job order");
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> out;
  for (long j : s) {
    if (j < 0 || static_cast<std::size_t>(j) >= n || seen[j]) fail("job order is not a permutation");
    seen[j] = true;
    out.push_back(static_cast<std::size_t>(j));
  }
  return out;
}

// Completion time of each job under the order.
RatVec completion_times(const RatVec& p, const std::vector<std::size_t>& order) {
  RatVec c(p.size());
  Rational t = 0;
  for (auto j : order) {
    t += p[j];
    c[j] = t;
  }
  return c;
}

const Rational& pvc2_weight(const RatVec& w, long mu) {
  static const Rational kZero(0);
  return mu < 0 ? kZero : w[static_cast<std::size_t>(mu)];
}

Rational pvc2_value(const Graph& g, const RatVec& w, const Solution& mu) {
  check_size(mu.size(), g.n, "assignment");
  for (long x : mu) {
    if (x < -1 || x >= static_cast<long>(g.edges.size())) fail("assignment names a missing edge");
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto& a = pvc2_weight(w, mu[g.edges[e].u]);
    const auto& b = pvc2_weight(w, mu[g.edges[e].v]);
    if (std::max(a, b) < w[e]) fail("edge " + std::to_string(e) + " is not covered");
  }
  Rational total = 0;
  for (long x : mu) total += pvc2_weight(w, x);
  return total;
}

Rational walk_cost(const RatVec& c, const Solution& x, std::size_t offset) {
  Rational total = 0;
  for (std::size_t e = 0; e < c.size(); ++e) {
    if (x[offset + e] != 0) total += x[offset + e] * c[e];
  }
  return total;
}

void check_closed_walk(const Graph& g, const Solution& x, std::size_t offset, std::size_t vehicle) {
  const std::size_t m = g.edges.size();
  std::vector<long> degree(g.n, 0);
  std::vector<std::size_t> used;
  for (std::size_t e = 0; e < m; ++e) {
    const long mult = x[offset + e];
    if (mult < 0) fail("walk multiplicity is negative");
    if (mult == 0) continue;
    degree[g.edges[e].u] += mult;
    degree[g.edges[e].v] += mult;
    used.push_back(e);
  }
  for (long deg : degree) {
    if (deg % 2 != 0) fail("walk " + std::to_string(vehicle) + " is not closed");
  }
  if (used.empty()) return;
  UnionFind uf(g.n);
  for (auto e : used) uf.unite(g.edges[e].u, g.edges[e].v);
  const std::size_t root = uf.find(g.edges[used.front()].u);
  for (auto e : used) {
    if (uf.find(g.edges[e].u) != root) fail("walk " + std::to_string(vehicle) + " is disconnected");
  }
}

}  // namespace

std::string problem_tag(const ProblemInstance& instance) {
  return std::visit(Overloaded{
                        [](const WisInstance&) { return std::string("wis"); },
                        [](const KnapsackInstance&) { return std::string("knapsack"); },
                        [](const MpscInstance&) { return std::string("mpsc"); },
                        [](const SseInstance&) { return std::string("sse"); },
                        [](const UflpInstance&) { return std::string("uflp"); },
                        [](const WTardyInstance&) { return std::string("wtardy"); },
                        [](const TotalTardinessInstance&) { return std::string("total-tardiness"); },
                        [](const RppInstance&) { return std::string("rpp"); },
                        [](const PvcInstance&) { return std::string("pvc"); },
                        [](const Pvc2Instance&) { return std::string("pvc2"); },
                        [](const C4uInstance&) { return std::string("c4u"); },
                        [](const RawVectorInstance&) { return std::string("raw-vector"); },
                    },
                    instance);
}

Sense objective_sense(const ProblemInstance& instance) {
  if (std::holds_alternative<WisInstance>(instance) ||
      std::holds_alternative<KnapsackInstance>(instance) ||
      std::holds_alternative<C4uInstance>(instance)) {
    return Sense::Maximize;
  }
  return Sense::Minimize;
}

void validate(const ProblemInstance& instance) {
  std::visit(
      Overloaded{
          [](const WisInstance& x) {
            check_graph(x.graph);
            check_size(x.w.size(), x.graph.n, "vertex weights");
            check_nonnegative(x.w, "vertex weights");
          },
          [](const KnapsackInstance& x) {
            if (x.weights.empty()) fail("knapsack needs at least one item");
            check_size(x.values.size(), x.weights.size(), "values");
          },
          [](const MpscInstance& x) {
            check_graph(x.graph);
            if (x.graph.n < 2) fail("power spanning subgraph needs at least two vertices");
            check_size(x.w.size(), x.graph.edges.size(), "edge weights");
            check_nonnegative(x.w, "edge weights");
            std::vector<std::size_t> all(x.graph.edges.size());
            std::iota(all.begin(), all.end(), 0);
            if (!connected(x.graph, all)) fail("graph is not connected");
          },
          [](const SseInstance& x) {
            check_graph(x.graph);
            if (x.graph.n < 2) fail("set expansion needs at least two vertices");
            check_size(x.w.size(), x.graph.edges.size(), "edge weights");
            check_nonnegative(x.w, "edge weights");
          },
          [](const UflpInstance& x) {
            if (x.clients == 0 || x.facilities == 0) fail("facility location needs clients and facilities");
            check_size(x.opening.size(), x.facilities, "opening costs");
            check_size(x.cost.size(), x.facilities, "cost matrix rows");
            for (const auto& row : x.cost) check_size(row.size(), x.clients, "cost matrix row");
            check_nonnegative(x.opening, "opening costs");
            for (const auto& row : x.cost) check_nonnegative(row, "service costs");
            if (x.metric) {
              BipartiteIndexMap map(x.facilities, std::vector<std::size_t>(x.clients));
              RatVec flat;
              for (std::size_t i = 0; i < x.facilities; ++i) {
                for (std::size_t j = 0; j < x.clients; ++j) {
                  map[i][j] = flat.size();
                  flat.push_back(x.cost[i][j]);
                }
              }
              if (!satisfies_all(flat, bipartite_metric_tests(map, flat.size()))) {
                fail("service costs flagged metric violate the triangle inequality");
              }
            }
          },
          [](const WTardyInstance& x) {
            if (x.p.empty()) fail("scheduling needs at least one job");
            check_size(x.d.size(), x.p.size(), "due dates");
            check_size(x.w.size(), x.p.size(), "job weights");
            check_nonnegative(x.p, "processing times");
            check_nonnegative(x.d, "due dates");
            check_nonnegative(x.w, "job weights");
          },
          [](const TotalTardinessInstance& x) {
            if (x.p.empty()) fail("scheduling needs at least one job");
            check_size(x.d.size(), x.p.size(), "due dates");
            check_nonnegative(x.p, "processing times");
            check_nonnegative(x.d, "due dates");
          },
          [](const RppInstance& x) {
            check_graph(x.graph);
            check_size(x.c.size(), x.graph.edges.size(), "edge lengths");
            check_nonnegative(x.c, "edge lengths");
            if (x.k < 1) fail("at least one vehicle is needed");
            std::set<std::size_t> seen;
            for (auto e : x.required) {
              if (e >= x.graph.edges.size()) fail("required edge " + std::to_string(e) + " is not an edge");
              if (!seen.insert(e).second) fail("required edge listed twice");
            }
          },
          [](const PvcInstance& x) {
            check_graph(x.graph);
            check_size(x.w.size(), x.graph.edges.size(), "edge weights");
            check_nonnegative(x.w, "edge weights");
          },
          [](const Pvc2Instance& x) {
            check_graph(x.graph);
            check_size(x.w.size(), x.graph.edges.size(), "edge weights");
            check_nonnegative(x.w, "edge weights");
          },
          [](const C4uInstance& x) {
            if (x.voters == 0 || x.alternatives == 0) fail("committee election needs voters and alternatives");
            check_size(x.u.size(), x.voters, "utility rows");
            for (const auto& row : x.u) {
              check_size(row.size(), x.alternatives, "utility row");
              check_nonnegative(row, "utilities");
            }
            if (x.k < 1 || x.k > x.alternatives) fail("committee size must lie in [1, m]");
          },
          [](const RawVectorInstance& x) {
            if (x.w.empty()) fail("raw vector is empty");
            if (x.n < 1) fail("class parameter must be at least 1");
          },
      },
      instance);
}

RatVec weight_vector(const ProblemInstance& instance) {
  return std::visit(
      Overloaded{
          [](const WisInstance& x) { return x.w; },
          [](const KnapsackInstance& x) {
            RatVec out = x.weights;
            out.insert(out.end(), x.values.begin(), x.values.end());
            return out;
          },
          [](const MpscInstance& x) { return x.w; },
          [](const SseInstance& x) { return x.w; },
          [](const UflpInstance& x) {
            RatVec out = x.opening;
            for (const auto& row : x.cost) out.insert(out.end(), row.begin(), row.end());
            return out;
          },
          [](const WTardyInstance& x) {
            RatVec out = x.w;
            out.insert(out.end(), x.p.begin(), x.p.end());
            out.insert(out.end(), x.d.begin(), x.d.end());
            return out;
          },
          [](const TotalTardinessInstance& x) {
            RatVec out = x.p;
            out.insert(out.end(), x.d.begin(), x.d.end());
            return out;
          },
          [](const RppInstance& x) { return x.c; },
          [](const PvcInstance& x) { return x.w; },
          [](const Pvc2Instance& x) { return x.w; },
          [](const C4uInstance& x) {
            RatVec out;
            for (const auto& row : x.u) out.insert(out.end(), row.begin(), row.end());
            return out;
          },
          [](const RawVectorInstance& x) { return x.w; },
      },
      instance);
}

ProblemInstance with_weights(const ProblemInstance& instance, const RatVec& w) {
  check_size(w.size(), weight_vector(instance).size(), "replacement weights");
  auto slice = [&](std::size_t from, std::size_t count) {
    return RatVec(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(from + count));
  };
  return std::visit(
      Overloaded{
          [&](WisInstance x) -> ProblemInstance { x.w = w; return x; },
          [&](KnapsackInstance x) -> ProblemInstance {
            const std::size_t n = x.weights.size();
            x.weights = slice(0, n);
            x.values = slice(n, n);
            return x;
          },
          [&](MpscInstance x) -> ProblemInstance { x.w = w; return x; },
          [&](SseInstance x) -> ProblemInstance { x.w = w; return x; },
          [&](UflpInstance x) -> ProblemInstance {
            x.opening = slice(0, x.facilities);
            for (std::size_t i = 0; i < x.facilities; ++i) {
              x.cost[i] = slice(x.facilities + i * x.clients, x.clients);
            }
            return x;
          },
          [&](WTardyInstance x) -> ProblemInstance {
            const std::size_t n = x.p.size();
            x.w = slice(0, n);
            x.p = slice(n, n);
            x.d = slice(2 * n, n);
            return x;
          },
          [&](TotalTardinessInstance x) -> ProblemInstance {
            const std::size_t n = x.p.size();
            x.p = slice(0, n);
            x.d = slice(n, n);
            return x;
          },
          [&](RppInstance x) -> ProblemInstance { x.c = w; return x; },
          [&](PvcInstance x) -> ProblemInstance { x.w = w; return x; },
          [&](Pvc2Instance x) -> ProblemInstance { x.w = w; return x; },
          [&](C4uInstance x) -> ProblemInstance {
            for (std::size_t v = 0; v < x.voters; ++v) x.u[v] = slice(v * x.alternatives, x.alternatives);
            return x;
          },
          [&](RawVectorInstance x) -> ProblemInstance { x.w = w; return x; },
      },
      instance);
}

Rational solution_value(const ProblemInstance& instance, const Solution& s) {
  return std::visit(
      Overloaded{
          [&](const WisInstance& x) -> Rational {
            const auto set = as_index_set(s, x.graph.n, "vertex");
            std::vector<bool> in(x.graph.n, false);
            for (auto v : set) in[v] = true;
            for (std::size_t e = 0; e < x.graph.edges.size(); ++e) {
              if (in[x.graph.edges[e].u] && in[x.graph.edges[e].v]) {
                fail("vertex set is not independent (edge " + std::to_string(e) + ")");
              }
            }
            Rational total = 0;
            for (auto v : set) total += x.w[v];
            return total;
          },
          [&](const KnapsackInstance& x) -> Rational {
            const auto set = as_index_set(s, x.weights.size(), "item");
            Rational weight = 0, value = 0;
            for (auto i : set) {
              weight += x.weights[i];
              value += x.values[i];
            }
            if (weight > x.k) fail("item set exceeds the capacity");
            return value;
          },
          [&](const MpscInstance& x) -> Rational {
            const auto set = as_index_set(s, x.graph.edges.size(), "edge");
            if (!connected(x.graph, set)) fail("edge set is not a connected spanning subgraph");
            std::vector<std::optional<Rational>> power(x.graph.n);
            for (auto e : set) {
              for (auto v : {x.graph.edges[e].u, x.graph.edges[e].v}) {
                if (!power[v] || x.w[e] > *power[v]) power[v] = x.w[e];
              }
            }
            Rational total = 0;
            for (const auto& p : power) total += *p;
            return total;
          },
          [&](const SseInstance& x) -> Rational {
            const auto set = as_index_set(s, x.graph.n, "vertex");
            if (set.empty() || set.size() > x.graph.n / 2) fail("set size must lie in [1, n/2]");
            std::vector<bool> in(x.graph.n, false);
            for (auto v : set) in[v] = true;
            Rational cut = 0;
            for (std::size_t e = 0; e < x.graph.edges.size(); ++e) {
              if (in[x.graph.edges[e].u] != in[x.graph.edges[e].v]) cut += x.w[e];
            }
            return cut / static_cast<long>(set.size());
          },
          [&](const UflpInstance& x) -> Rational {
            const auto set = as_index_set(s, x.facilities, "facility");
            if (set.empty()) fail("at least one facility must open");
            Rational total = 0;
            for (auto i : set) total += x.opening[i];
            for (std::size_t j = 0; j < x.clients; ++j) {
              Rational best = x.cost[set.front()][j];
              for (auto i : set) best = std::min(best, x.cost[i][j]);
              total += best;
            }
            return total;
          },
          [&](const WTardyInstance& x) -> Rational {
            const auto order = as_permutation(s, x.p.size());
            const RatVec c = completion_times(x.p, order);
            Rational total = 0;
            for (std::size_t j = 0; j < x.p.size(); ++j) {
              if (c[j] > x.d[j]) total += x.w[j];
            }
            return total;
          },
          [&](const TotalTardinessInstance& x) -> Rational {
            const auto order = as_permutation(s, x.p.size());
            const RatVec c = completion_times(x.p, order);
            Rational total = 0;
            for (std::size_t j = 0; j < x.p.size(); ++j) {
              if (c[j] > x.d[j]) total += c[j] - x.d[j];
            }
            return total;
          },
          [&](const RppInstance& x) -> Rational {
            const std::size_t m = x.graph.edges.size();
            check_size(s.size(), x.k * m, "walk multiplicities");
            const Solution walks = canonicalize_rpp(s);
            std::vector<bool> covered(m, false);
            Rational worst = 0;
            for (std::size_t i = 0; i < x.k; ++i) {
              check_closed_walk(x.graph, walks, i * m, i);
              for (std::size_t e = 0; e < m; ++e) {
                if (walks[i * m + e] > 0) covered[e] = true;
              }
              worst = std::max(worst, walk_cost(x.c, walks, i * m));
            }
            for (auto e : x.required) {
              if (!covered[e]) fail("required edge " + std::to_string(e) + " is not covered");
            }
            return worst;
          },
          [&](const PvcInstance& x) -> Rational { return pvc2_value(x.graph, x.w, s); },
          [&](const Pvc2Instance& x) -> Rational { return pvc2_value(x.graph, x.w, s); },
          [&](const C4uInstance& x) -> Rational {
            const auto set = as_index_set(s, x.alternatives, "alternative");
            if (set.empty() || set.size() > x.k) fail("committee size must lie in [1, k]");
            Rational total = 0;
            for (std::size_t v = 0; v < x.voters; ++v) {
              Rational best = x.u[v][set.front()];
              for (auto a : set) best = std::max(best, x.u[v][a]);
              total += best;
            }
            return total;
          },
          [&](const RawVectorInstance&) -> Rational {
            fail("raw vectors have no solutions");
            return 0;
          },
      },
      instance);
}

std::optional<Rational> try_solution_value(const ProblemInstance& instance, const Solution& s) {
  try {
    return solution_value(instance, s);
  } catch (const InputError&) {
    return std::nullopt;
  }
}

Solution canonicalize_rpp(const Solution& solution) {
  Solution out = solution;
  for (auto& x : out) {
    if (x >= 3) x -= 2 * ((x - 1) / 2);
  }
  return out;
}

Pvc2Instance pvc_to_pvc2(const PvcInstance& instance) {
  validate(instance);
  return Pvc2Instance{instance.graph, instance.w};
}

RatVec pvc2_assignment_to_pvc(const Pvc2Instance& instance, const Solution& mu) {
  check_size(mu.size(), instance.graph.n, "assignment");
  RatVec out(mu.size());
  for (std::size_t v = 0; v < mu.size(); ++v) {
    if (mu[v] < -1 || mu[v] >= static_cast<long>(instance.w.size())) fail("assignment names a missing edge");
    out[v] = pvc2_weight(instance.w, mu[v]);
  }
  return out;
}

Rational pvc_assignment_cost(const PvcInstance& instance, const RatVec& mu) {
  check_size(mu.size(), instance.graph.n, "vertex values");
  check_nonnegative(mu, "vertex values");
  for (std::size_t e = 0; e < instance.graph.edges.size(); ++e) {
    const auto [u, v] = instance.graph.edges[e];
    if (std::max(mu[u], mu[v]) < instance.w[e]) fail("edge " + std::to_string(e) + " is not covered");
  }
  Rational total = 0;
  for (const auto& x : mu) total += x;
  return total;
}

}  // namespace kernelsmith
