#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spanlab/clustering.hpp"
#include "spanlab/graph.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

/// Level indices and suffix length for a k-hybrid spanner:
/// t = floor(k/2), t_prime = k-1-t, ell_t = 7t + 8t^2.
struct HybridParams {
  int k = 0;
  int t = 0;
  int t_prime = 0;
  int ell_t = 0;
};

HybridParams hybrid_params(int k);

enum class PathEnd { Front, Back };

/// The min(ell, |p|) edges of p next to the chosen endpoint, ordered
/// outward from that endpoint.
std::vector<Edge> path_suffix(const Path& p, std::size_t ell, PathEnd anchor);

/// Shortest path between a closest pair (u1 in c1, u2 in c2); ties go to
/// the smaller u1, then the smaller u2. nullopt when no pair is connected.
std::optional<Path> closest_pair_path(const Graph& g, std::span<const Vertex> c1, std::span<const Vertex> c2);

/// Closest member of c2 given a multi-root BFS from c1, using the same tie
/// rule as closest_pair_path. nullopt when c2 is unreachable.
std::optional<Path> closest_pair_path(const BfsResult& from_c1, std::span<const Vertex> c2);

struct HybridOptions {
  /// Also keep the ell edges at the Z_t' / C_tau end of every path.
  bool suffix_both = false;
};

struct HybridResult {
  Spanner spanner;
  HybridParams params;
  ClusterSequence clusters;
};

/// H = H_k ∪ E2 ∪ E3, a k-hybrid spanner of g: adjacent pairs within
/// 2k-1, every other connected pair within k times its distance.
HybridResult build_hybrid(const Graph& g, int k, std::uint64_t seed, HybridOptions options = {});

}  // namespace spanlab
