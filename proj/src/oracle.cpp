#include "kernelsmith/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

namespace {

void cap_check(bool ok, const std::string& what, const std::string& limit) {
  if (!ok) throw CapExceeded(what + " exceeds the oracle cap (" + limit + ")");
}

bool spans_connected(std::size_t n, const std::vector<Edge>& edges,
                     const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n;
  for (auto e : subset) {
    const auto a = find(edges[e].u), b = find(edges[e].v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components <= 1;
}

void for_each_subset(std::size_t ground, std::size_t min_size, std::size_t max_size,
                     const OracleCaps& caps, const std::string& what,
                     const std::function<void(const Solution&)>& visit) {
  cap_check(ground <= caps.subset_ground, what + " count " + std::to_string(ground),
            std::to_string(caps.subset_ground));
  Solution s;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ground); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size < min_size || size > max_size) continue;
    s.clear();
    for (std::size_t i = 0; i < ground; ++i) {
      if (mask >> i & 1U) s.push_back(static_cast<long>(i));
    }
    visit(s);
  }
}

void for_each_permutation(std::size_t n, const OracleCaps& caps,
                          const std::function<void(const Solution&)>& visit) {
  cap_check(n <= caps.permutation_jobs, "job count " + std::to_string(n),
            std::to_string(caps.permutation_jobs));
  Solution s(n);
  std::iota(s.begin(), s.end(), 0);
  do {
    visit(s);
  } while (std::next_permutation(s.begin(), s.end()));
}

// Closed connected walks with multiplicities in {0,1,2}, lexicographic.
std::vector<Solution> rpp_walks(const Graph& g) {
  const std::size_t m = g.edges.size();
  std::vector<Solution> out;
  Solution x(m, 0);
  while (true) {
    std::vector<int> parity(g.n, 0);
    std::vector<std::size_t> used;
    for (std::size_t e = 0; e < m; ++e) {
      if (x[e] == 0) continue;
      parity[g.edges[e].u] ^= static_cast<int>(x[e] & 1);
      parity[g.edges[e].v] ^= static_cast<int>(x[e] & 1);
      used.push_back(e);
    }
    if (std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; })) {
      // Support must form one component.
      std::vector<std::size_t> touched;
      for (auto e : used) {
        touched.push_back(g.edges[e].u);
        touched.push_back(g.edges[e].v);
      }
      std::sort(touched.begin(), touched.end());
      touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
      std::vector<Edge> local;
      for (auto e : used) {
        const auto u = std::lower_bound(touched.begin(), touched.end(), g.edges[e].u) - touched.begin();
        const auto v = std::lower_bound(touched.begin(), touched.end(), g.edges[e].v) - touched.begin();
        local.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
      }
      std::vector<std::size_t> all(local.size());
      std::iota(all.begin(), all.end(), 0);
      if (spans_connected(touched.size(), local, all)) out.push_back(x);
    }
    std::size_t pos = m;
    while (pos > 0 && x[pos - 1] == 2) x[--pos] = 0;
    if (pos == 0) break;
    ++x[pos - 1];
  }
  return out;
}

void for_each_rpp(const RppInstance& x, const OracleCaps& caps,
                  const std::function<void(const Solution&)>& visit) {
  const std::size_t m = x.graph.edges.size();
  cap_check(x.required.size() <= caps.rpp_required,
            "required edge count " + std::to_string(x.required.size()),
            std::to_string(caps.rpp_required));
  cap_check(x.k <= caps.rpp_vehicles, "vehicle count " + std::to_string(x.k),
            std::to_string(caps.rpp_vehicles));
  cap_check(m <= caps.rpp_edges, "edge count " + std::to_string(m), std::to_string(caps.rpp_edges));
  const std::vector<Solution> walks = rpp_walks(x.graph);
  // Nondecreasing index tuples: vehicles sorted canonically.
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < x.k; ++i) {
    tuples = tuples * (walks.size() + i) / (i + 1);
    cap_check(tuples <= caps.assignments, "walk tuple count", std::to_string(caps.assignments));
  }
  std::vector<std::size_t> idx(x.k, 0);
  Solution s(x.k * m);
  while (true) {
    bool covers = true;
    for (auto e : x.required) {
      bool hit = false;
      for (auto i : idx) hit = hit || walks[i][e] > 0;
      if (!hit) {
        covers = false;
        break;
      }
    }
    if (covers) {
      for (std::size_t i = 0; i < x.k; ++i) {
        std::copy(walks[idx[i]].begin(), walks[idx[i]].end(), s.begin() + static_cast<long>(i * m));
      }
      visit(s);
    }
    std::size_t pos = x.k;
    while (pos > 0 && idx[pos - 1] + 1 == walks.size()) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < x.k; ++i) idx[i] = idx[pos - 1];
  }
}

void for_each_assignment(const Graph& g, const OracleCaps& caps,
                         const std::function<void(const Solution&)>& visit) {
  const std::size_t m = g.edges.size();
  std::uint64_t total = 1;
  for (std::size_t v = 0; v < g.n; ++v) {
    total *= m + 1;
    cap_check(total <= caps.assignments, "assignment count (m+1)^n",
              std::to_string(caps.assignments));
  }
  Solution s(g.n, -1);
  while (true) {
    visit(s);
    std::size_t pos = g.n;
    while (pos > 0 && s[pos - 1] == static_cast<long>(m) - 1) s[--pos] = -1;
    if (pos == 0) break;
    ++s[pos - 1];
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool better(const Rational& a, const Rational& b, Sense sense) {
  return sense == Sense::Minimize ? a < b : a > b;
}

struct Optima {
  std::optional<Rational> value;
  std::vector<Solution> set;

  void offer(const Solution& s, const Rational& v, Sense sense) {
    if (!value || better(v, *value, sense)) {
      value = v;
      set.clear();
    }
    if (v == *value) set.push_back(s);
  }
};

std::string rat(const Rational& x) { return to_string(x); }

}  // namespace

std::string format_solution(const Solution& s) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << s[i];
  out << ']';
  return out.str();
}

void for_each_candidate(const ProblemInstance& instance, const OracleCaps& caps,
                        const std::function<void(const Solution&)>& visit) {
  validate(instance);
  std::visit(
      Overloaded{
          [&](const WisInstance& x) {
            for_each_subset(x.graph.n, 0, x.graph.n, caps, "vertex", [&](const Solution& s) {
              std::vector<bool> in(x.graph.n, false);
              for (long v : s) in[static_cast<std::size_t>(v)] = true;
              for (const auto& e : x.graph.edges) {
                if (in[e.u] && in[e.v]) return;
              }
              visit(s);
            });
          },
          [&](const KnapsackInstance& x) {
            for_each_subset(x.weights.size(), 0, x.weights.size(), caps, "item", visit);
          },
          [&](const MpscInstance& x) {
            const std::size_t m = x.graph.edges.size();
            for_each_subset(m, x.graph.n - 1, m, caps, "edge", [&](const Solution& s) {
              std::vector<std::size_t> subset(s.begin(), s.end());
              if (spans_connected(x.graph.n, x.graph.edges, subset)) visit(s);
            });
          },
          [&](const SseInstance& x) {
            for_each_subset(x.graph.n, 1, x.graph.n / 2, caps, "vertex", visit);
          },
          [&](const UflpInstance& x) {
            for_each_subset(x.facilities, 1, x.facilities, caps, "facility", visit);
          },
          [&](const WTardyInstance& x) { for_each_permutation(x.p.size(), caps, visit); },
          [&](const TotalTardinessInstance& x) { for_each_permutation(x.p.size(), caps, visit); },
          [&](const RppInstance& x) { for_each_rpp(x, caps, visit); },
          [&](const PvcInstance& x) { for_each_assignment(x.graph, caps, visit); },
          [&](const Pvc2Instance& x) { for_each_assignment(x.graph, caps, visit); },
          [&](const C4uInstance& x) {
            for_each_subset(x.alternatives, 1, x.k, caps, "alternative", visit);
          },
          [&](const RawVectorInstance&) {
            throw InputError("raw vectors have no solutions to enumerate");
          },
      },
      instance);
}

OptimaReport brute_force(const ProblemInstance& instance, const OracleCaps& caps) {
  const Sense sense = objective_sense(instance);
  Optima best;
  OptimaReport report;
  for_each_candidate(instance, caps, [&](const Solution& s) {
    ++report.enumerated;
    if (auto v = try_solution_value(instance, s)) best.offer(s, *v, sense);
  });
  report.value = best.value;
  report.optima = std::move(best.set);
  std::sort(report.optima.begin(), report.optima.end());
  return report;
}

VerifyReport verify_kernel(const ProblemInstance& original, const ProblemInstance& reduced,
                           const std::optional<ThresholdPair>& thresholds,
                           const OracleCaps& caps) {
  validate(original);
  validate(reduced);
  if (original.index() != reduced.index()) {
    throw InputError("instances are of different problems (" + problem_tag(original) + " vs " +
                     problem_tag(reduced) + ")");
  }
  ProblemInstance probe = with_weights(original, weight_vector(reduced));
  const auto* knap = std::get_if<KnapsackInstance>(&original);
  const auto* knap2 = std::get_if<KnapsackInstance>(&reduced);
  if (knap) {
    if (thresholds) throw InputError("knapsack carries its thresholds in the instance");
    auto& p = std::get<KnapsackInstance>(probe);
    p.k = knap2->k;
    p.l = knap2->l;
  }
  if (!(probe == reduced)) throw InputError("instances differ in structure");

  const Sense sense = objective_sense(original);
  VerifyReport report;
  Optima before, after;
  auto fail = [&](const Solution& s, const std::string& why) {
    if (!report.passed) return;
    report.passed = false;
    report.witness = s;
    report.diff = "solution " + format_solution(s) + ": " + why;
  };

  for_each_candidate(original, caps, [&](const Solution& s) {
    if (!report.passed) return;
    ++report.enumerated;
    if (knap) {
      Rational w1 = 0, w2 = 0, v1 = 0, v2 = 0;
      for (long i : s) {
        const auto j = static_cast<std::size_t>(i);
        w1 += knap->weights[j];
        w2 += knap2->weights[j];
        v1 += knap->values[j];
        v2 += knap2->values[j];
      }
      if (sgn(w1 - knap->k) != sgn(w2 - knap2->k)) {
        fail(s, "weight " + rat(w1) + " vs capacity " + rat(knap->k) + " but " + rat(w2) +
                    " vs " + rat(knap2->k));
      } else if (sgn(v1 - knap->l) != sgn(v2 - knap2->l)) {
        fail(s, "value " + rat(v1) + " vs target " + rat(knap->l) + " but " + rat(v2) + " vs " +
                    rat(knap2->l));
      }
    }
    const auto a = try_solution_value(original, s);
    const auto b = try_solution_value(reduced, s);
    if (a.has_value() != b.has_value()) {
      fail(s, std::string("feasible only in the ") + (a ? "original" : "reduced") + " instance");
      return;
    }
    if (!a) return;
    if (thresholds && sgn(*a - thresholds->original) != sgn(*b - thresholds->reduced)) {
      fail(s, "value " + rat(*a) + " vs threshold " + rat(thresholds->original) + " but " +
                  rat(*b) + " vs " + rat(thresholds->reduced));
    }
    before.offer(s, *a, sense);
    after.offer(s, *b, sense);
  });
  if (!report.passed) return report;

  std::sort(before.set.begin(), before.set.end());
  std::sort(after.set.begin(), after.set.end());
  if (before.set != after.set) {
    std::vector<Solution> only;
    std::set_symmetric_difference(before.set.begin(), before.set.end(), after.set.begin(),
                                  after.set.end(), std::back_inserter(only));
    const Solution& s = only.front();
    const bool in_before = std::binary_search(before.set.begin(), before.set.end(), s);
    fail(s, std::string("optimal only in the ") + (in_before ? "original" : "reduced") +
                " instance (original value " + rat(*try_solution_value(original, s)) +
                ", optimum " + rat(*before.value) + "; reduced value " +
                rat(*try_solution_value(reduced, s)) + ", optimum " + rat(*after.value) + ")");
  }
  return report;
}

bool verify_class(const RatVec& w, const RatVec& w2, const ClassSpec& spec, std::uint64_t cap) {
  return same_class(w, w2, spec, cap);
}

std::optional<Rational> rpp_optimum_value(const RppInstance& instance, const OracleCaps& caps) {
  validate(instance);
  const std::size_t q = instance.required.size();
  cap_check(q <= caps.rpp_required, "required edge count " + std::to_string(q),
            std::to_string(caps.rpp_required));
  cap_check(instance.k <= caps.rpp_vehicles, "vehicle count " + std::to_string(instance.k),
            std::to_string(caps.rpp_vehicles));
  const auto dist = shortest_paths(instance.graph, instance.c);
  const auto& edges = instance.graph.edges;

  // Cheapest closed walk through each subset of required edges.
  std::vector<std::optional<Rational>> tour(std::size_t{1} << q);
  tour[0] = Rational(0);
  for (std::size_t mask = 1; mask < tour.size(); ++mask) {
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < q; ++i) {
      if (mask >> i & 1U) order.push_back(i);
    }
    do {
      for (std::size_t flips = 0; flips < (std::size_t{1} << order.size()); ++flips) {
        std::optional<Rational> total = Rational(0);
        for (std::size_t t = 0; t < order.size() && total; ++t) {
          const auto& e = edges[instance.required[order[t]]];
          const auto& next = edges[instance.required[order[(t + 1) % order.size()]]];
          const std::size_t to = flips >> t & 1U ? e.u : e.v;
          const std::size_t t1 = (t + 1) % order.size();
          const std::size_t from = flips >> t1 & 1U ? next.v : next.u;
          if (!dist[to][from]) {
            total.reset();
            break;
          }
          *total += instance.c[instance.required[order[t]]] + *dist[to][from];
        }
        if (total && (!tour[mask] || *total < *tour[mask])) tour[mask] = total;
      }
    } while (std::next_permutation(order.begin(), order.end()));
  }

  std::optional<Rational> best;
  std::vector<std::size_t> owner(q, 0);
  while (true) {
    std::vector<std::size_t> masks(instance.k, 0);
    for (std::size_t i = 0; i < q; ++i) masks[owner[i]] |= std::size_t{1} << i;
    std::optional<Rational> worst = Rational(0);
    for (auto mask : masks) {
      if (!tour[mask]) {
        worst.reset();
        break;
      }
      worst = std::max(*worst, *tour[mask]);
    }
    if (worst && (!best || *worst < *best)) best = worst;
    std::size_t pos = q;
    while (pos > 0 && owner[pos - 1] + 1 == instance.k) owner[--pos] = 0;
    if (pos == 0) break;
    ++owner[pos - 1];
  }
  return best;
}

}  // namespace kernelsmith
