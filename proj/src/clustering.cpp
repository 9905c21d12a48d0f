#include "spanlab/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "spanlab/numeric.hpp"
#include "spanlab/rng.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

std::vector<std::vector<Vertex>> ClusterLevel::members() const {
  std::vector<std::vector<Vertex>> out(centers.size());
  for (Vertex v = 0; v < static_cast<Vertex>(center.size()); ++v) {
    if (center[v] == kNoVertex) continue;
    auto it = std::lower_bound(centers.begin(), centers.end(), center[v]);
    out[static_cast<std::size_t>(it - centers.begin())].push_back(v);
  }
  return out;
}

std::optional<Vertex> nearest_center(const Graph& g, Vertex u, std::span<const Vertex> centers, int radius) {
  if (centers.empty()) throw std::invalid_argument("nearest_center: empty center set");
  const BfsResult r = bfs(g, u, radius);
  std::optional<Vertex> best;
  for (Vertex z : centers) {
    if (!r.reached(z)) continue;
    if (!best || r.dist[z] < r.dist[*best] || (r.dist[z] == r.dist[*best] && z < *best)) best = z;
  }
  return best;
}

namespace {

ClusterLevel singleton_level(Vertex n) {
  ClusterLevel level;
  level.centers.resize(static_cast<std::size_t>(n));
  level.center.resize(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) level.centers[v] = level.center[v] = v;
  level.depth.assign(static_cast<std::size_t>(n), 0);
  level.parent.assign(static_cast<std::size_t>(n), kNoVertex);
  return level;
}

}  // namespace

ClusterSequence cluster_sequence(const Graph& g, int k, double mu, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("cluster_sequence: k must be >= 1");
  // mu == 0 keeps every center at every level (a single-source epsilon).
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("cluster_sequence: mu must lie in [0,1]");
  const Vertex n = g.num_vertices();
  const double keep = std::pow(static_cast<double>(n), -mu);

  ClusterSequence seq;
  seq.k = k;
  seq.mu = mu;
  seq.seed = seed;
  seq.levels.push_back(singleton_level(n));

  Rng rng(derive_seed(seed, "cluster"));
  EdgeCollector h;
  std::vector<char> in_all(static_cast<std::size_t>(n), 1);
  std::vector<Vertex> seen_cluster;  // per center of the previous level, last vertex linked

  for (int tau = 1; tau <= k; ++tau) {
    const ClusterLevel& prev = seq.levels.back();
    ClusterLevel level;
    // T1. Draw for every previous center, even when the level is forced empty,
    // so the stream consumed does not depend on that special case.
    for (Vertex z : prev.centers) {
      const bool kept = rng.bernoulli(keep);
      if (kept && !(mu == 1.0 && tau == k)) level.centers.push_back(z);
    }
    // T2. Radius-tau clustering around Z_tau.
    level.center.assign(static_cast<std::size_t>(n), kNoVertex);
    level.depth.assign(static_cast<std::size_t>(n), kUnreachable);
    level.parent.assign(static_cast<std::size_t>(n), kNoVertex);
    if (!level.centers.empty()) {
      const BfsResult r = bfs(g, level.centers, tau);
      for (Vertex v : r.order) {
        level.center[v] = r.owner[v];
        level.depth[v] = r.dist[v];
        level.parent[v] = r.tree_parent[v];
        if (r.tree_parent[v] != kNoVertex) level.forest.push_back(Edge::of(v, r.tree_parent[v]));
      }
      std::sort(level.forest.begin(), level.forest.end());
    }
    // T3. Newly unclustered vertices link once to every adjacent cluster of
    // the previous level, through their minimum-id neighbor in it.
    seen_cluster.assign(static_cast<std::size_t>(n), kNoVertex);
    for (Vertex v = 0; v < n; ++v) {
      if (!in_all[v] || level.clustered(v)) continue;
      level.delta.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        const Vertex c = prev.center[w];
        if (c == kNoVertex || seen_cluster[c] == v) continue;
        seen_cluster[c] = v;
        level.q_edges.push_back(Edge::of(v, w));
      }
    }
    std::sort(level.q_edges.begin(), level.q_edges.end());
    for (Vertex v = 0; v < n; ++v) in_all[v] = in_all[v] && level.clustered(v);
    // T4.
    h.insert_all(level.forest);
    h.insert_all(level.q_edges);
    seq.levels.push_back(std::move(level));
  }
  seq.partial_spanner = h.sorted();
  return seq;
}

void write_cluster_dump(std::ostream& out, const ClusterSequence& seq) {
  for (std::size_t tau = 0; tau < seq.levels.size(); ++tau) {
    const ClusterLevel& level = seq.levels[tau];
    for (std::size_t v = 0; v < level.center.size(); ++v) {
      out << tau << ' ' << v << ' ';
      if (level.center[v] == kNoVertex) {
        out << "- -\n";
      } else {
        out << level.center[v] << ' ' << level.depth[v] << '\n';
      }
    }
  }
}

CgkClustering cgk_clustering(const Graph& g, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("cgk_clustering: gamma must lie in [0,1]");
  const double size = std::pow(static_cast<double>(std::max<Vertex>(g.num_vertices(), 1)), gamma);
  CgkClustering c = cgk_clustering_with_size(g, static_cast<Vertex>(std::max<std::int64_t>(1, ceil_robust(size))));
  c.gamma = gamma;
  return c;
}

CgkClustering cgk_clustering_with_size(const Graph& g, Vertex cluster_size) {
  if (cluster_size < 1) throw std::invalid_argument("cgk_clustering: cluster size must be >= 1");
  const Vertex n = g.num_vertices();
  CgkClustering c;
  c.cluster_size = cluster_size;
  c.gamma = n > 1 ? log_ratio(cluster_size, n) : 1.0;
  c.cluster_of.assign(static_cast<std::size_t>(n), -1);

  // free_count[v] = number of unclustered neighbors of v. Counts only
  // decrease, so a vertex that falls below the threshold never qualifies
  // again and one ascending sweep finds every hub in minimum-id order.
  std::vector<Vertex> free_count(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) free_count[v] = g.degree(v);

  EdgeCollector gc;
  for (Vertex hub = 0; hub < n; ++hub) {
    while (free_count[hub] >= cluster_size) {
      const int id = static_cast<int>(c.clusters.size());
      std::vector<Vertex> members;
      for (Vertex w : g.neighbors(hub)) {
        if (c.cluster_of[w] >= 0) continue;
        members.push_back(w);
        if (static_cast<Vertex>(members.size()) == cluster_size) break;
      }
      for (Vertex w : members) {
        c.cluster_of[w] = id;
        for (Vertex x : g.neighbors(w)) --free_count[x];
        gc.insert(Edge::of(hub, w));
      }
      c.clusters.push_back(std::move(members));
      c.hubs.push_back(hub);
    }
  }
  for (const Edge& e : g.edges()) {
    const int cu = c.cluster_of[e.u];
    const int cv = c.cluster_of[e.v];
    if (cu < 0 || cv < 0 || cu == cv) gc.insert(e);
  }
  c.edges = gc.sorted();
  return c;
}

}  // namespace spanlab
