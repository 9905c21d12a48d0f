#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spanlab/graph.hpp"
#include "spanlab/spanner.hpp"

namespace spanlab {

/// Layered graph on levels 1..k+1. A vertex is a coordinate tuple
/// (a_1..a_k): level 1 has a_1 in [1,N1], higher levels a_1 in [1,N2], and
/// every other coordinate lies in [1,N1]. Level i joins level i+1 by
/// replacing coordinate i.
struct LayeredGraph {
  int r = 0;
  int k = 0;
  double epsilon = 0.0;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  Graph graph;
  std::vector<int> levels;                 // 1-based level of each vertex
  std::vector<std::vector<int>> coords;    // 1-based coordinates
  std::vector<Vertex> sources;             // level 1
  std::vector<Vertex> level_start;         // first vertex of each level, plus n
  std::vector<std::string> warnings;

  std::size_t level_size(int level) const;
  Vertex vertex_at(int level, std::span<const int> coordinates) const;
};

/// Default bound on |V| for build_lb_graph.
inline constexpr std::int64_t kLayeredSizeCap = 1'000'000;

/// Throws std::length_error when |V| would exceed max_vertices.
LayeredGraph build_lb_graph(int r, int k, double epsilon, std::int64_t max_vertices = kLayeredSizeCap);

struct MissingChain {
  std::vector<Vertex> chain;  // one vertex per level, k+1 in all
};

/// Depth-first search for a level-1 to level-(k+1) chain whose k edges are
/// all absent from h. Vertices proven to be dead ends are memoized.
std::optional<MissingChain> find_missing_chain(const LayeredGraph& lg, std::span<const Edge> h);

struct LbAudit {
  std::optional<MissingChain> chain;
  int dist_g = kUnreachable;
  int dist_h = kUnreachable;  // kUnreachable when disconnected in h
  /// dist_g <= k and dist_h >= 3k on the witness.
  bool distortion_confirmed = false;
};

LbAudit lb_audit(const LayeredGraph& lg, std::span<const Edge> h);

}  // namespace spanlab
