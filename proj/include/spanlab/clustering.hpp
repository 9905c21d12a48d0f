#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "spanlab/graph.hpp"

namespace spanlab {

/// One clustering C_tau of the layered construction.
struct ClusterLevel {
  std::vector<Vertex> centers;  // Z_tau, ascending
  std::vector<Vertex> center;   // per vertex; kNoVertex when unclustered
  std::vector<int> depth;       // hop distance to the center
  std::vector<Vertex> parent;   // forest parent; kNoVertex at centers
  std::vector<Edge> forest;     // F_tau
  std::vector<Vertex> delta;    // Delta_tau: clustered at every earlier level, not here
  std::vector<Edge> q_edges;    // Q_tau

  bool clustered(Vertex v) const noexcept { return center[v] != kNoVertex; }
  /// Members grouped per center, in the order of `centers`.
  std::vector<std::vector<Vertex>> members() const;
};

/// The k+1 clusterings C_0..C_k and the partial spanner H_k.
struct ClusterSequence {
  int k = 0;
  double mu = 0.0;
  std::uint64_t seed = 0;
  std::vector<ClusterLevel> levels;
  std::vector<Edge> partial_spanner;  // H_k, sorted

  const ClusterLevel& level(int tau) const { return levels.at(static_cast<std::size_t>(tau)); }
};

/// Minimum-index center among those nearest to u, if within radius.
std::optional<Vertex> nearest_center(const Graph& g, Vertex u, std::span<const Vertex> centers, int radius);

/// Sampled multi-level clustering. Level tau keeps each center of level
/// tau-1 with probability n^-mu (none at level k when mu == 1), assigns
/// every vertex within tau hops to its nearest center, and links each
/// newly unclustered vertex to every adjacent cluster of the level below.
ClusterSequence cluster_sequence(const Graph& g, int k, double mu, std::uint64_t seed);

/// Diagnostic dump, one line per level and vertex: "tau u center dist".
/// Unclustered vertices print "-" for center and dist.
void write_cluster_dump(std::ostream& out, const ClusterSequence& seq);

/// Disjoint equal-size clusters, each with a hub adjacent to every member,
/// and the subgraph g_c that keeps every edge not running between two
/// different clusters.
struct CgkClustering {
  double gamma = 0.0;
  Vertex cluster_size = 0;
  std::vector<std::vector<Vertex>> clusters;  // ascending members
  std::vector<Vertex> hubs;
  std::vector<int> cluster_of;  // per vertex, -1 when unclustered
  std::vector<Edge> edges;      // g_c, sorted

  bool clustered(Vertex v) const noexcept { return cluster_of[v] >= 0; }
};

/// Greedy clustering with cluster size ceil(n^gamma).
CgkClustering cgk_clustering(const Graph& g, double gamma);
/// Same, with an explicit cluster size (>= 1).
CgkClustering cgk_clustering_with_size(const Graph& g, Vertex cluster_size);

}  // namespace spanlab
