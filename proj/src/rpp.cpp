#include <algorithm>
#include <set>

#include "kernelsmith/errors.hpp"
#include "kernelsmith/problems.hpp"

namespace kernelsmith {

namespace {

// Floyd-Warshall with first-hop edges for path recovery.
struct AllPairs {
  std::vector<std::vector<std::optional<Rational>>> dist;
  std::vector<std::vector<long>> first_edge;  // -1 on the diagonal/unreachable

  AllPairs(const Graph& g, const RatVec& c)
      : dist(g.n, std::vector<std::optional<Rational>>(g.n)),
        first_edge(g.n, std::vector<long>(g.n, -1)) {
    std::vector<std::vector<std::size_t>> via(g.n, std::vector<std::size_t>(g.n));
    for (std::size_t v = 0; v < g.n; ++v) dist[v][v] = Rational(0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [u, v] = g.edges[e];
      if (!dist[u][v] || c[e] < *dist[u][v]) {
        dist[u][v] = dist[v][u] = c[e];
        first_edge[u][v] = first_edge[v][u] = static_cast<long>(e);
      }
    }
    for (std::size_t m = 0; m < g.n; ++m) {
      for (std::size_t a = 0; a < g.n; ++a) {
        if (!dist[a][m]) continue;
        for (std::size_t b = 0; b < g.n; ++b) {
          if (!dist[m][b] || a == b) continue;
          const Rational through = *dist[a][m] + *dist[m][b];
          if (!dist[a][b] || through < *dist[a][b]) {
            dist[a][b] = through;
            first_edge[a][b] = first_edge[a][m];
          }
        }
      }
    }
    graph_ = g;
  }

  // Vertices of a shortest a-b path, a first.
  std::vector<std::size_t> path_vertices(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out = {a};
    while (a != b) {
      const auto e = static_cast<std::size_t>(first_edge[a][b]);
      a = graph_.edges[e].u == a ? graph_.edges[e].v : graph_.edges[e].u;
      out.push_back(a);
    }
    return out;
  }

  std::vector<std::size_t> path_edges(std::size_t a, std::size_t b) const {
    std::vector<std::size_t> out;
    while (a != b) {
      const auto e = static_cast<std::size_t>(first_edge[a][b]);
      out.push_back(e);
      a = graph_.edges[e].u == a ? graph_.edges[e].v : graph_.edges[e].u;
    }
    return out;
  }

 private:
  Graph graph_;
};

struct Traversal {
  std::size_t edge;
  std::size_t from;
  std::size_t to;
};

// Euler circuit of the multigraph given by multiplicities (one block).
std::vector<Traversal> euler_circuit(const Graph& g, const Solution& x, std::size_t offset) {
  const std::size_t m = g.edges.size();
  std::vector<std::size_t> instance_edge;
  std::vector<std::vector<std::size_t>> adj(g.n);
  for (std::size_t e = 0; e < m; ++e) {
    for (long t = 0; t < x[offset + e]; ++t) {
      const std::size_t id = instance_edge.size();
      instance_edge.push_back(e);
      adj[g.edges[e].u].push_back(id);
      adj[g.edges[e].v].push_back(id);
    }
  }
  if (instance_edge.empty()) return {};
  std::vector<bool> used(instance_edge.size(), false);
  std::vector<std::size_t> ptr(g.n, 0);
  std::vector<std::pair<std::size_t, long>> stack = {{g.edges[instance_edge[0]].u, -1}};
  std::vector<std::size_t> verts;
  std::vector<long> via;
  while (!stack.empty()) {
    const std::size_t v = stack.back().first;
    while (ptr[v] < adj[v].size() && used[adj[v][ptr[v]]]) ++ptr[v];
    if (ptr[v] < adj[v].size()) {
      const std::size_t id = adj[v][ptr[v]];
      used[id] = true;
      const auto& edge = g.edges[instance_edge[id]];
      stack.push_back({edge.u == v ? edge.v : edge.u, static_cast<long>(id)});
    } else {
      verts.push_back(v);
      via.push_back(stack.back().second);
      stack.pop_back();
    }
  }
  std::vector<Traversal> out;
  for (std::size_t t = 0; t + 1 < verts.size(); ++t) {
    out.push_back({instance_edge[static_cast<std::size_t>(via[t])], verts[t], verts[t + 1]});
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::optional<Rational>>> shortest_paths(const Graph& g, const RatVec& c) {
  if (c.size() != g.edges.size()) throw DimensionMismatch(c.size(), g.edges.size());
  return AllPairs(g, c).dist;
}

RppShortcut rpp_shortcut(const RppInstance& instance) {
  validate(instance);
  RppShortcut out;
  out.required_image.assign(instance.graph.edges.size(), std::nullopt);
  out.reduced.k = instance.k;
  if (instance.required.empty()) return out;

  const Graph& g = instance.graph;
  const AllPairs ap(g, instance.c);
  std::vector<bool> r_incident(g.n, false);
  for (auto e : instance.required) {
    r_incident[g.edges[e].u] = true;
    r_incident[g.edges[e].v] = true;
  }
  std::set<std::size_t> kept;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (r_incident[v]) kept.insert(v);
  }
  for (auto e : instance.required) {
    const auto [u, v] = g.edges[e];
    if (!(*ap.dist[u][v] < instance.c[e])) continue;
    for (auto x : ap.path_vertices(u, v)) {
      if (!r_incident[x]) {
        kept.insert(x);
        break;
      }
    }
  }
  out.kept.assign(kept.begin(), kept.end());

  std::vector<std::vector<std::optional<std::size_t>>> req_between(
      g.n, std::vector<std::optional<std::size_t>>(g.n));
  for (auto e : instance.required) {
    req_between[g.edges[e].u][g.edges[e].v] = e;
    req_between[g.edges[e].v][g.edges[e].u] = e;
  }
  auto& red = out.reduced;
  red.graph.n = out.kept.size();
  for (std::size_t a = 0; a < out.kept.size(); ++a) {
    for (std::size_t b = a + 1; b < out.kept.size(); ++b) {
      const std::size_t ka = out.kept[a], kb = out.kept[b];
      std::vector<long> expansion(g.edges.size(), 0);
      Rational cost;
      if (const auto e = req_between[ka][kb]) {
        expansion[*e] = 1;
        cost = instance.c[*e];
        out.required_image[*e] = red.graph.edges.size();
      } else if (ap.dist[ka][kb]) {
        for (auto e : ap.path_edges(ka, kb)) ++expansion[e];
        cost = *ap.dist[ka][kb];
      } else {
        continue;
      }
      red.graph.edges.push_back({a, b});
      red.c.push_back(cost);
      out.expansion.push_back(std::move(expansion));
    }
  }
  for (auto e : instance.required) red.required.push_back(*out.required_image[e]);
  return out;
}

Solution rpp_lift_solution(const RppShortcut& shortcut, const RppInstance& original,
                           const Solution& reduced_solution) {
  const std::size_t m = original.graph.edges.size();
  const std::size_t m2 = shortcut.reduced.graph.edges.size();
  if (reduced_solution.size() != original.k * m2) {
    throw DimensionMismatch(reduced_solution.size(), original.k * m2);
  }
  Solution out(original.k * m, 0);
  for (std::size_t i = 0; i < original.k; ++i) {
    for (std::size_t e2 = 0; e2 < m2; ++e2) {
      const long mult = reduced_solution[i * m2 + e2];
      if (mult == 0) continue;
      for (std::size_t e = 0; e < m; ++e) out[i * m + e] += mult * shortcut.expansion[e2][e];
    }
  }
  return canonicalize_rpp(out);
}

Solution rpp_project_solution(const RppShortcut& shortcut, const RppInstance& original,
                              const Solution& solution) {
  const std::size_t m = original.graph.edges.size();
  if (solution.size() != original.k * m) throw DimensionMismatch(solution.size(), original.k * m);
  const RppInstance& red = shortcut.reduced;
  const std::size_t m2 = red.graph.edges.size();
  Solution out(original.k * m2, 0);
  if (red.graph.n == 0) return out;
  const AllPairs ap(red.graph, red.c);
  std::vector<std::optional<std::size_t>> local(original.graph.n);
  for (std::size_t a = 0; a < shortcut.kept.size(); ++a) local[shortcut.kept[a]] = a;

  const Solution walks = canonicalize_rpp(solution);
  for (std::size_t i = 0; i < original.k; ++i) {
    std::vector<Traversal> circuit = euler_circuit(original.graph, walks, i * m);
    const auto first = std::find_if(circuit.begin(), circuit.end(), [&](const Traversal& t) {
      return shortcut.required_image[t.edge].has_value();
    });
    if (first == circuit.end()) continue;
    std::rotate(circuit.begin(), first, circuit.end());
    std::vector<std::size_t> req;
    for (std::size_t t = 0; t < circuit.size(); ++t) {
      if (shortcut.required_image[circuit[t].edge]) req.push_back(t);
    }
    for (std::size_t r = 0; r < req.size(); ++r) {
      const Traversal& t = circuit[req[r]];
      ++out[i * m2 + *shortcut.required_image[t.edge]];
      const Traversal& next = circuit[req[(r + 1) % req.size()]];
      const std::size_t a = *local[t.to];
      const std::size_t b = *local[next.from];
      for (auto e2 : ap.path_edges(a, b)) ++out[i * m2 + e2];
    }
  }
  return canonicalize_rpp(out);
}

}  // namespace kernelsmith
