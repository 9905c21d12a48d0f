// Independent reference computations for the test suite. Nothing here
// reuses library algorithms beyond the Graph/Edge containers.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "spanlab/graph.hpp"

namespace oracle {

using spanlab::Edge;
using spanlab::Vertex;

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

using Matrix = std::vector<std::vector<std::int64_t>>;

/// Floyd-Warshall over unit-weight edges.
inline Matrix all_pairs(Vertex n, const std::vector<Edge>& edges) {
  Matrix d(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n), kInf));
  for (Vertex v = 0; v < n; ++v) d[v][v] = 0;
  for (Edge e : edges) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (Vertex m = 0; m < n; ++m)
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = 0; j < n; ++j)
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
  return d;
}

inline Matrix all_pairs(const spanlab::Graph& g) { return all_pairs(g.num_vertices(), g.edges()); }

/// Plain queue BFS, kInf for unreachable.
inline std::vector<std::int64_t> hops(const spanlab::Graph& g, Vertex root) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(g.num_vertices()), kInf);
  std::queue<Vertex> q;
  d[root] = 0;
  q.push(root);
  while (!q.empty()) {
    const Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (d[w] == kInf) d[w] = d[v] + 1, q.push(w);
    }
  }
  return d;
}

/// Relaxes every weighted edge until nothing changes.
inline std::vector<std::int64_t> relax_to_fixpoint(const spanlab::Emulator& h, Vertex root) {
  std::vector<std::int64_t> d(static_cast<std::size_t>(h.num_vertices()), kInf);
  d[root] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : h.edges()) {
      if (d[e.u] + e.w < d[e.v]) d[e.v] = d[e.u] + e.w, changed = true;
      if (d[e.v] + e.w < d[e.u]) d[e.u] = d[e.v] + e.w, changed = true;
    }
  }
  return d;
}

inline std::vector<Edge> path_edges(Vertex n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return e;
}

inline std::vector<Edge> cycle_edges(Vertex n) {
  auto e = path_edges(n);
  e.push_back(Edge::of(0, n - 1));
  return e;
}

inline std::vector<Edge> star_edges(Vertex leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return e;
}

inline std::vector<Edge> complete_edges(Vertex n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return e;
}

inline spanlab::Graph petersen() {
  std::vector<Edge> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back(Edge::of(i, (i + 1) % 5));
    e.push_back(Edge::of(i, i + 5));
    e.push_back(Edge::of(5 + i, 5 + (i + 2) % 5));
  }
  return spanlab::Graph::from_edges(10, e);
}

inline spanlab::Graph make(Vertex n, const std::vector<Edge>& edges) { return spanlab::Graph::from_edges(n, edges); }

/// Random spanning tree plus extra edges, from a tiny LCG so the oracle
/// shares no code with the library generator.
inline spanlab::Graph random_tree(Vertex n, std::uint64_t seed) {
  std::vector<Edge> e;
  std::uint64_t x = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  for (Vertex v = 1; v < n; ++v) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    e.push_back(Edge::of(static_cast<Vertex>((x >> 33) % static_cast<std::uint64_t>(v)), v));
  }
  return spanlab::Graph::from_edges(n, e);
}

}  // namespace oracle
