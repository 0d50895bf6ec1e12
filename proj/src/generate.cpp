#include "kernelsmith/generate.hpp"

#include <algorithm>
#include <set>

#include "kernelsmith/errors.hpp"

namespace kernelsmith {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return x % bound;
}

BigInt Rng::bits(std::size_t count) {
  BigInt out = 0;
  std::size_t have = 0;
  while (have < count) {
    const std::size_t take = std::min<std::size_t>(64, count - have);
    std::uint64_t chunk = next();
    if (take < 64) chunk &= (std::uint64_t{1} << take) - 1;
    BigInt part;
    mpz_import(part.get_mpz_t(), 1, 1, sizeof(chunk), 0, 0, &chunk);
    out = (out << static_cast<mp_bitcnt_t>(take)) + part;
    have += take;
  }
  return out;
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 0) throw InputError("empty range");
  const std::size_t count = bit_length(bound);
  BigInt x = bits(count);
  while (x >= bound) x = bits(count);
  return x;
}

namespace {

std::size_t max_edges(std::size_t n) { return n * (n - 1) / 2; }

RatVec random_weights(Rng& rng, std::size_t count, std::size_t bits) {
  RatVec out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(rng.bits(bits));
  return out;
}

Rational sum(const RatVec& v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

Rational below_inclusive(Rng& rng, const Rational& top) {
  return Rational(rng.below(BigInt(top.get_num() / top.get_den()) + 1));
}

std::size_t edge_count(const GenerateOptions& o, std::size_t fallback) {
  return o.m.value_or(std::min(fallback, max_edges(o.n)));
}

void add_random_edges(Rng& rng, std::size_t n, std::size_t m, Graph& g,
                      std::set<std::pair<std::size_t, std::size_t>>& have) {
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (!have.count({u, v})) free.push_back({u, v});
    }
  }
  while (g.edges.size() < m) {
    const auto i = static_cast<std::size_t>(rng.below(free.size()));
    g.edges.push_back({free[i].first, free[i].second});
    have.insert(free[i]);
    free.erase(free.begin() + static_cast<long>(i));
  }
}

}  // namespace

Graph random_graph(Rng& rng, std::size_t n, std::size_t m) {
  if (m > max_edges(n)) throw InputError("too many edges for a simple graph");
  Graph g{n, {}};
  std::set<std::pair<std::size_t, std::size_t>> have;
  add_random_edges(rng, n, m, g, have);
  return g;
}

Graph random_connected_graph(Rng& rng, std::size_t n, std::size_t m) {
  if (n == 0) throw InputError("graph needs a vertex");
  if (m + 1 < n) throw InputError("too few edges for a connected graph");
  if (m > max_edges(n)) throw InputError("too many edges for a simple graph");
  Graph g{n, {}};
  std::set<std::pair<std::size_t, std::size_t>> have;
  for (std::size_t v = 1; v < n; ++v) {
    const auto u = static_cast<std::size_t>(rng.below(v));
    g.edges.push_back({u, v});
    have.insert({u, v});
  }
  add_random_edges(rng, n, m, g, have);
  return g;
}

const std::vector<std::string>& problem_tags() {
  static const std::vector<std::string> tags = {
      "wis", "knapsack", "mpsc", "sse", "uflp", "wtardy", "total-tardiness",
      "rpp", "pvc", "pvc2", "c4u", "raw-vector"};
  return tags;
}

ProblemInstance generate_instance(const std::string& tag, const GenerateOptions& o) {
  Rng rng(o.seed);
  const std::size_t n = o.n;
  if (n == 0) throw InputError("size n must be at least 1");
  if (tag == "wis") {
    Graph g = random_graph(rng, n, edge_count(o, n));
    return WisInstance{g, random_weights(rng, n, o.bits)};
  }
  if (tag == "knapsack") {
    KnapsackInstance x{random_weights(rng, n, o.bits), random_weights(rng, n, o.bits), 0, 0};
    x.k = below_inclusive(rng, sum(x.weights));
    x.l = below_inclusive(rng, sum(x.values));
    return x;
  }
  if (tag == "mpsc") {
    if (n < 2) throw InputError("power spanning subgraph needs at least two vertices");
    Graph g = random_connected_graph(rng, n, edge_count(o, n + 1));
    const std::size_t m = g.edges.size();
    return MpscInstance{std::move(g), random_weights(rng, m, o.bits)};
  }
  if (tag == "sse") {
    if (n < 2) throw InputError("set expansion needs at least two vertices");
    Graph g = random_graph(rng, n, edge_count(o, n + 1));
    const std::size_t m = g.edges.size();
    return SseInstance{std::move(g), random_weights(rng, m, o.bits)};
  }
  if (tag == "uflp") {
    const std::size_t m = o.m.value_or(3);
    if (m == 0) throw InputError("facility location needs a facility");
    UflpInstance x{n, m, random_weights(rng, m, o.bits), {}, o.metric};
    if (o.metric) {
      // Points on a grid; L1 distances form a metric.
      auto point = [&] { return std::pair<BigInt, BigInt>(rng.bits(o.bits), rng.bits(o.bits)); };
      std::vector<std::pair<BigInt, BigInt>> fac, cli;
      for (std::size_t i = 0; i < m; ++i) fac.push_back(point());
      for (std::size_t j = 0; j < n; ++j) cli.push_back(point());
      for (std::size_t i = 0; i < m; ++i) {
        RatVec row;
        for (std::size_t j = 0; j < n; ++j) {
          const BigInt dx = abs(fac[i].first - cli[j].first);
          const BigInt dy = abs(fac[i].second - cli[j].second);
          row.emplace_back(BigInt(dx + dy));
        }
        x.cost.push_back(std::move(row));
      }
    } else {
      for (std::size_t i = 0; i < m; ++i) x.cost.push_back(random_weights(rng, n, o.bits));
    }
    return x;
  }
  if (tag == "wtardy" || tag == "total-tardiness") {
    RatVec p = random_weights(rng, n, o.bits);
    const Rational horizon = sum(p);
    RatVec d;
    for (std::size_t j = 0; j < n; ++j) d.push_back(below_inclusive(rng, horizon));
    if (tag == "total-tardiness") return TotalTardinessInstance{std::move(p), std::move(d)};
    return WTardyInstance{std::move(p), std::move(d), random_weights(rng, n, o.bits)};
  }
  if (tag == "rpp") {
    Graph g = random_connected_graph(rng, n, edge_count(o, n + 1));
    const std::size_t m = g.edges.size();
    if (o.required > m) throw InputError("more required edges than edges");
    if (o.k == 0) throw InputError("at least one vehicle is needed");
    std::vector<std::size_t> all(m);
    for (std::size_t e = 0; e < m; ++e) all[e] = e;
    std::vector<std::size_t> req;
    for (std::size_t t = 0; t < o.required; ++t) {
      const auto i = static_cast<std::size_t>(rng.below(all.size()));
      req.push_back(all[i]);
      all.erase(all.begin() + static_cast<long>(i));
    }
    std::sort(req.begin(), req.end());
    return RppInstance{std::move(g), random_weights(rng, m, o.bits), std::move(req), o.k};
  }
  if (tag == "pvc" || tag == "pvc2") {
    Graph g = random_graph(rng, n, edge_count(o, n));
    const std::size_t m = g.edges.size();
    RatVec w = random_weights(rng, m, o.bits);
    if (tag == "pvc") return PvcInstance{std::move(g), std::move(w)};
    return Pvc2Instance{std::move(g), std::move(w)};
  }
  if (tag == "c4u") {
    const std::size_t m = o.m.value_or(3);
    if (m == 0) throw InputError("committee election needs an alternative");
    if (o.k == 0 || o.k > m) throw InputError("committee size must lie in [1, m]");
    C4uInstance x{n, m, {}, o.k};
    for (std::size_t v = 0; v < n; ++v) x.u.push_back(random_weights(rng, m, o.bits));
    return x;
  }
  if (tag == "raw-vector") {
    RatVec w;
    for (std::size_t i = 0; i < n; ++i) {
      Rational x(rng.bits(o.bits));
      if (rng.coin()) x = -x;
      if (o.domain == Domain::Rational) x /= Rational(rng.bits(o.bits) + 1);
      w.push_back(x);
    }
    return RawVectorInstance{std::move(w), o.class_param, o.domain};
  }
  throw InputError("unknown problem tag '" + tag + "'");
}

}  // namespace kernelsmith
