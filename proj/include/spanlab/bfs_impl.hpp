#pragma once

// Template bodies for graph.hpp; not meant to be included directly.

#include <algorithm>
#include <stdexcept>

namespace spanlab {

template <AdjacencyGraph G>
BfsResult bfs_on(const G& g, std::span<const Vertex> roots, int max_depth) {
  if (roots.empty()) throw std::invalid_argument("bfs: empty root set");
  const auto n = static_cast<std::size_t>(g.num_vertices());
  BfsResult r;
  r.dist.assign(n, kUnreachable);
  r.parent.assign(n, kNoVertex);
  r.tree_parent.assign(n, kNoVertex);
  r.owner.assign(n, kNoVertex);
  r.order.reserve(n);

  for (Vertex s : roots) {
    if (s < 0 || static_cast<std::size_t>(s) >= n) throw std::out_of_range("bfs: root out of range");
    if (r.dist[s] == 0) continue;
    r.dist[s] = 0;
    r.owner[s] = s;
    r.order.push_back(s);
  }
  for (std::size_t head = 0; head < r.order.size(); ++head) {
    const Vertex u = r.order[head];
    if (r.dist[u] >= max_depth) continue;
    for (Vertex w : g.neighbors(u)) {
      if (r.dist[w] != kUnreachable) continue;
      r.dist[w] = r.dist[u] + 1;
      r.order.push_back(w);
    }
  }
  // Parents and owners in visit order: every vertex one level closer is
  // final before any vertex of the next level is examined.
  for (Vertex v : r.order) {
    if (r.dist[v] == 0) continue;
    const int up = r.dist[v] - 1;
    Vertex best_parent = kNoVertex;
    Vertex best_owner = kNoVertex;
    for (Vertex w : g.neighbors(v)) {
      if (r.dist[w] != up) continue;
      if (best_parent == kNoVertex || w < best_parent) best_parent = w;
      if (best_owner == kNoVertex || r.owner[w] < best_owner) best_owner = r.owner[w];
    }
    r.parent[v] = best_parent;
    r.owner[v] = best_owner;
    Vertex tree = kNoVertex;
    for (Vertex w : g.neighbors(v)) {
      if (r.dist[w] == up && r.owner[w] == best_owner && (tree == kNoVertex || w < tree)) tree = w;
    }
    r.tree_parent[v] = tree;
  }
  return r;
}

template <AdjacencyGraph G>
std::vector<int> bfs_distances(const G& g, Vertex root) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(dist.size());
  dist[root] = 0;
  queue.push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != kUnreachable) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace spanlab
