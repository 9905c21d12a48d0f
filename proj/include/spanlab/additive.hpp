#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spanlab/clustering.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

/// Thresholds for the +2k sourcewise spanner.
///   heavy_degree  Y   = ceil(n^{(k*eps+1)/(2k+2)})
///   long_length   L   = ceil(n ln n / Y^2)
///   phi               = (2L)^{1/k}
struct AdditiveParams {
  int k = 0;
  double epsilon = 0.0;
  std::int64_t heavy_degree = 1;
  std::int64_t long_length = 1;
  double phi = 2.0;
};

AdditiveParams additive_params(Vertex n, const SourceSet& sources, int k);
inline AdditiveParams additive_params(const Graph& g, const SourceSet& sources, int k) {
  return additive_params(g.num_vertices(), sources, k);
}

struct PairClass {
  Vertex source = 0;
  Vertex target = 0;
  int heavy_count = 0;  // heavy vertices on the canonical source-target path
  bool is_long = false;
};

/// Every connected (s, v) with v != s, in ascending (s, v) order.
std::vector<PairClass> classify_pairs(const Graph& g, const SourceSet& sources, const AdditiveParams& p);

/// A candidate path of the path-buying loop, with cost and value measured
/// against the spanner at the time it was considered.
struct CandidatePath {
  Vertex source = 0;
  Vertex target = 0;
  int level = 0;
  Path path;
  std::size_t cost = 0;
  std::size_t value = 0;
};

/// Clusters that some path vertex reaches strictly sooner along the path
/// than the source reaches the cluster in the current spanner.
/// spanner_dist holds hop distances from path.front() in the spanner.
std::size_t compute_value(const Path& path, const CgkClustering& clustering, std::span<const int> spanner_dist);
std::size_t compute_value(const Path& path, Vertex source, const CgkClustering& clustering, const Graph& current);

struct AdditiveOptions {
  /// Replaces the computed thresholds (tests use this to force long pairs).
  std::optional<AdditiveParams> params;
  /// Keep every bought candidate in the result.
  bool record_purchases = false;
  /// Extra draws of the long-pair sample when verification finds a long
  /// pair outside +2k. 0 means a single draw, unverified.
  int retries = 0;
};

struct AdditiveResult {
  Spanner spanner;  // H^a ∪ H^b
  AdditiveParams params;
  CgkClustering clustering;
  std::vector<PairClass> pairs;
  std::vector<Vertex> sample;        // Z of the final draw
  std::vector<Edge> long_pair_edges;  // H^a
  std::vector<Edge> short_pair_edges; // H^b
  std::vector<std::size_t> bought_per_level;
  std::vector<CandidatePath> purchases;
  int draws = 1;
  bool verified = false;  // set when retries > 0 and the last draw passed
};

/// (2k, S)-additive sourcewise spanner: light-vertex edges, BFS trees from
/// a random sample for long pairs, and path buying over short pairs.
AdditiveResult build_sourcewise_additive(const Graph& g, const SourceSet& sources, int k, std::uint64_t seed,
                                         const AdditiveOptions& options = {});

struct EmulatorResult {
  Emulator emulator;
  SpannerMeta meta;
  CgkClustering clustering;
};

/// (2, S)-additive sourcewise emulator: g_c at gamma = eps/2 plus, for each
/// source and cluster, an edge to the cluster's closest vertex weighted by
/// the exact distance.
EmulatorResult build_sourcewise_emulator2(const Graph& g, const SourceSet& sources);

/// Subgraph with +2 stretch on every pair of `subset`. Pairs are fixed in
/// nondecreasing distance order by buying their canonical path whenever
/// the current spanner is more than 2 hops too long.
Spanner build_subsetwise_plus2(const Graph& g, std::span<const Vertex> subset);

/// (4, S)-additive sourcewise spanner: g_c at gamma = eps/2 together with a
/// subsetwise +2 spanner on hubs ∪ S.
Spanner build_sourcewise_additive4(const Graph& g, const SourceSet& sources);

}  // namespace spanlab
